#include "bfly/io.hpp"

#include "json.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bfly {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

}  // namespace

void write_cmx(std::ostream& os, const ComplexMatrix& m) {
    os << "cmx " << m.rows() << ' ' << m.cols() << '\n';
    char buf[64];
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.16e,%.16e", m(r, c).real(), m(r, c).imag());
            if (c) os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

void write_cmx(const std::filesystem::path& path, const ComplexMatrix& m) {
    auto os = open_out(path);
    write_cmx(os, m);
}

ComplexMatrix read_cmx(std::istream& is) {
    std::string tag;
    long rows = 0, cols = 0;
    if (!(is >> tag >> rows >> cols) || tag != "cmx" || rows < 0 || cols < 0) {
        throw std::runtime_error("malformed cmx header");
    }
    ComplexMatrix m(rows, cols);
    std::string token;
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) {
            if (!(is >> token)) throw std::runtime_error("cmx: unexpected end of data");
            double re = 0.0, im = 0.0;
            if (std::sscanf(token.c_str(), "%lf,%lf", &re, &im) != 2) {
                throw std::runtime_error("cmx: malformed entry '" + token + "'");
            }
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix read_cmx(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_cmx(is);
}

void write_perm(std::ostream& os, const Permutation& p) {
    os << "perm " << p.size() << '\n';
    for (int i = 0; i < p.size(); ++i) {
        if (i) os << ' ';
        os << p(i) + 1;
    }
    os << '\n';
}

void write_perm(const std::filesystem::path& path, const Permutation& p) {
    auto os = open_out(path);
    write_perm(os, p);
}

Permutation read_perm(std::istream& is) {
    std::string tag;
    long n = 0;
    if (!(is >> tag >> n) || tag != "perm" || n < 0) {
        throw std::runtime_error("malformed perm header");
    }
    std::vector<int> images(n);
    for (long i = 0; i < n; ++i) {
        long v = 0;
        if (!(is >> v) || v < 1 || v > n) throw std::runtime_error("perm: image out of range");
        images[i] = static_cast<int>(v - 1);
    }
    return Permutation(std::move(images));
}

Permutation read_perm(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_perm(is);
}

void write_factors(const std::filesystem::path& dir, const std::string& stem,
                   const ButterflyFactors& factors) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["n"] = factors.size();
    manifest["levels"] = factors.levels();
    auto& files = manifest["files"] = nlohmann::json::array();
    for (int l = 0; l < factors.levels(); ++l) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%02d.cmx", stem.c_str(), l + 1);
        write_cmx(dir / name, factors.factors[l]);
        files.push_back(name);
    }
    auto os = open_out(dir / (stem + "_manifest.json"));
    os << manifest.dump(2) << '\n';
}

ButterflyFactors read_factors(const std::filesystem::path& manifest) {
    auto is = open_in(manifest);
    nlohmann::json j;
    is >> j;
    ButterflyFactors out;
    const auto dir = manifest.parent_path();
    for (const auto& name : j.at("files")) {
        out.factors.push_back(read_cmx(dir / name.get<std::string>()));
    }
    if (out.levels() != j.at("levels").get<int>() || out.size() != j.at("n").get<int>()) {
        throw std::runtime_error("factor manifest is inconsistent with its files");
    }
    return out;
}

}  // namespace bfly
