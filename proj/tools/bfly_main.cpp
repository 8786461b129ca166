// Command-line harness: planted-instance generation, factorization and
// identification on files, and the CSV experiment drivers.
//
// Exit codes: 0 on completion (including identification reporting failure
// status), 2 on configuration errors, 1 on unexpected runtime errors.

#include "CLI11.hpp"

#include "bfly/experiments.hpp"
#include "bfly/identify.hpp"
#include "bfly/io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kLargeGate = 64;  // sizes above this need --large (cubic cost)

bfly::Family parse_family(const std::string& name) {
    if (name == "random-butterfly") return bfly::Family::RandomButterfly;
    if (name == "dft") return bfly::Family::Dft;
    throw CLI::ValidationError("--family", "expected 'random-butterfly' or 'dft'");
}

void check_sizes(const std::vector<int>& sizes, bool large) {
    for (int n : sizes) {
        bfly::log2_exact(n);
        if (n > kLargeGate && !large) {
            throw CLI::ValidationError(
                "--size", "n = " + std::to_string(n) + " exceeds the desk-scale envelope (" +
                              std::to_string(kLargeGate) + "); pass --large to allow it");
        }
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
}

void add_grid_flags(CLI::App* cmd, bfly::ExperimentConfig& cfg) {
    cmd->add_option("--alpha-grid", cfg.alpha_grid, "similarity exponents to sweep")
        ->capture_default_str();
    cmd->add_option("--seeds", cfg.seeds, "restart seeds to sweep")->capture_default_str();
    cmd->add_option("--iters", cfg.iterations, "alternating iterations per run")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.base_seed, "base seed for instance derivation")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"butterfly-matrix cluster-tree identification and factorization"};
    app.require_subcommand(1);

    bfly::ExperimentConfig cfg;
    std::string family_name = "random-butterfly";
    std::string out;
    std::string matrix_path, p_path, q_path;
    int size = 8;
    double eps = 0.0;
    bool large = false;

    auto* generate = app.add_subcommand("generate", "write a planted instance to files");
    generate->add_option("--family", family_name, "random-butterfly | dft")
        ->capture_default_str();
    generate->add_option("--size", size, "matrix size, a power of two")->capture_default_str();
    generate->add_option("--eps", eps, "relative noise level")->capture_default_str();
    generate->add_option("--seed", cfg.base_seed, "base seed")->capture_default_str();
    generate->add_option("--out", out, "output path prefix")->required();
    generate->add_flag("--large", large, "allow sizes above the desk-scale envelope");

    auto* factorize = app.add_subcommand("factorize", "factorize a matrix with known P and Q");
    factorize->add_option("matrix", matrix_path, "target .cmx file")->required();
    factorize->add_option("p", p_path, "column permutation .perm file")->required();
    factorize->add_option("q", q_path, "row permutation .perm file")->required();
    factorize->add_option("--out", out, "prefix for factor files and manifest");

    auto* identify = app.add_subcommand("identify", "recover trees, P, Q and factors");
    identify->add_option("matrix", matrix_path, "target .cmx file")->required();
    add_grid_flags(identify, cfg);
    identify->add_option("--out", out, "report JSON path (default stdout)");
    identify->add_flag("--large", large, "allow sizes above the desk-scale envelope");

    auto* exhaustive = app.add_subcommand("exhaustive", "error of every tree pair at n = 8");
    exhaustive->add_option("--size", size, "must be 8")->capture_default_str();
    exhaustive->add_option("--seed", cfg.base_seed, "instance seed")->capture_default_str();
    exhaustive->add_option("--out", out, "CSV path (default stdout)");

    auto* success = app.add_subcommand("success-table", "identification success rates");
    success->add_option("--family", family_name, "random-butterfly | dft")->capture_default_str();
    success->add_option("--size", cfg.sizes, "matrix sizes")->capture_default_str();
    success->add_option("--eps", cfg.eps, "noise levels")->capture_default_str();
    success->add_option("--instances", cfg.instances, "instances per cell")->capture_default_str();
    add_grid_flags(success, cfg);
    success->add_option("--out", out, "CSV path (default stdout)");
    success->add_flag("--large", large, "allow sizes above the desk-scale envelope");

    auto* noise = app.add_subcommand("noise-curve", "relative error divided by eps");
    noise->add_option("--family", family_name, "random-butterfly | dft")->capture_default_str();
    noise->add_option("--size", cfg.sizes, "matrix sizes")->capture_default_str();
    noise->add_option("--eps", cfg.eps, "noise levels (positive entries only)")
        ->capture_default_str();
    noise->add_option("--instances", cfg.instances, "instances per cell")->capture_default_str();
    add_grid_flags(noise, cfg);
    noise->add_option("--out", out, "CSV path (default stdout)");
    noise->add_flag("--large", large, "allow sizes above the desk-scale envelope");

    auto* quality = app.add_subcommand("partition-quality", "per-level objective quality");
    quality->add_option("--family", family_name, "random-butterfly | dft")->capture_default_str();
    quality->add_option("--size", size, "matrix size")->capture_default_str();
    quality->add_option("--eps", eps, "noise level")->capture_default_str();
    add_grid_flags(quality, cfg);
    quality->add_option("--out", out, "CSV path (default stdout)");
    quality->add_flag("--large", large, "allow sizes above the desk-scale envelope");

    try {
        app.parse(argc, argv);

        cfg.family = parse_family(family_name);
        if (*generate) {
            check_sizes({size}, large);
            const auto instance = bfly::planted_instance(cfg.family, size, eps, cfg.base_seed, 0);
            bfly::write_cmx(std::filesystem::path(out + ".cmx"), instance.target);
            bfly::write_cmx(std::filesystem::path(out + "_base.cmx"), instance.base);
            bfly::write_perm(std::filesystem::path(out + "_p.perm"), instance.p);
            bfly::write_perm(std::filesystem::path(out + "_q.perm"), instance.q);
            std::cout << "wrote " << out << ".cmx, _base.cmx, _p.perm, _q.perm\n";
        } else if (*factorize) {
            const auto a = bfly::read_cmx(std::filesystem::path(matrix_path));
            const auto p = bfly::read_perm(std::filesystem::path(p_path));
            const auto q = bfly::read_perm(std::filesystem::path(q_path));
            const auto result = bfly::hierarchical_factorize(a, p, q);
            if (!out.empty()) {
                const std::filesystem::path prefix(out);
                const auto dir = prefix.has_parent_path() ? prefix.parent_path()
                                                          : std::filesystem::path(".");
                bfly::write_factors(dir, prefix.filename().string(), result.factors);
            }
            std::cout << "error " << result.error << "\nrelative_error "
                      << result.error / bfly::frobenius_norm(a) << "\n";
        } else if (*identify) {
            const auto a = bfly::read_cmx(std::filesystem::path(matrix_path));
            check_sizes({static_cast<int>(a.rows())}, large);
            bfly::IdentifyOptions options{cfg.alpha_grid, cfg.seeds, cfg.iterations};
            const auto result = bfly::identify(a, options);
            write_text(out, bfly::identify_report_json(result));
        } else if (*exhaustive) {
            write_text(out, bfly::exhaustive_csv(bfly::exhaustive_rows(size, cfg.base_seed)));
        } else if (*success) {
            check_sizes(cfg.sizes, large);
            write_text(out, bfly::success_table_csv(bfly::success_table_rows(cfg)));
        } else if (*noise) {
            check_sizes(cfg.sizes, large);
            for (double e : cfg.eps) {
                if (e <= 0.0) std::cerr << "notice: skipping eps = " << e << "\n";
            }
            write_text(out, bfly::noise_curve_csv(bfly::noise_curve_rows(cfg)));
        } else if (*quality) {
            check_sizes({size}, large);
            write_text(out,
                       bfly::partition_quality_csv(bfly::partition_quality_rows(size, eps, cfg)));
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
