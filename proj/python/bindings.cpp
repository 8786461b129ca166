#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bfly/experiments.hpp"
#include "bfly/identify.hpp"

namespace py = pybind11;

namespace {

bfly::Permutation perm_from(const std::vector<int>& images) {
    return bfly::Permutation(images);
}

std::vector<std::vector<std::vector<int>>> tree_levels(const bfly::ClusterTree& tree) {
    std::vector<std::vector<std::vector<int>>> levels;
    for (int m = 0; m <= tree.depth(); ++m) levels.push_back(tree.level_sets(m));
    return levels;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "butterfly-matrix cluster-tree identification and factorization";

    m.def(
        "random_butterfly",
        [](int levels, std::uint64_t seed) {
            return bfly::random_orthogonal_butterfly(levels, seed).product();
        },
        py::arg("levels"), py::arg("seed") = 0,
        "Dense product of a random orthogonal butterfly, size 2**levels.");

    m.def("dft", &bfly::dft_matrix, py::arg("n"), "Unnormalized DFT matrix.");

    m.def(
        "make_target",
        [](const bfly::ComplexMatrix& a, const std::vector<int>& p, const std::vector<int>& q,
           double eps, std::uint64_t seed) {
            return bfly::make_target(a, perm_from(p), perm_from(q), eps, seed);
        },
        py::arg("a"), py::arg("p"), py::arg("q"), py::arg("eps") = 0.0, py::arg("seed") = 0,
        "Q^T * A * P plus scaled Gaussian noise; p and q are 0-based images.");

    m.def(
        "random_permutation",
        [](int n, std::uint64_t seed) {
            const auto perm = bfly::Permutation::random(n, seed);
            return std::vector<int>(perm.images().begin(), perm.images().end());
        },
        py::arg("n"), py::arg("seed") = 0, "Seeded permutation as 0-based images.");

    m.def(
        "factorize",
        [](const bfly::ComplexMatrix& a, const std::vector<int>& p, const std::vector<int>& q) {
            auto result = bfly::hierarchical_factorize(a, perm_from(p), perm_from(q));
            return py::make_tuple(result.factors.factors, result.error);
        },
        py::arg("a"), py::arg("p"), py::arg("q"),
        "Hierarchical factorization of Q*A*P^T; returns (factors, error).");

    m.def(
        "identify",
        [](const bfly::ComplexMatrix& a, const std::vector<double>& alpha_grid,
           const std::vector<std::uint64_t>& seeds, int iters) {
            bfly::IdentifyOptions options;
            if (!alpha_grid.empty()) options.alpha_grid = alpha_grid;
            if (!seeds.empty()) options.seeds = seeds;
            options.max_iterations = iters;
            const auto result = bfly::identify(a, options);
            const auto loads = py::module_::import("json").attr("loads");
            return loads(bfly::identify_report_json(result));
        },
        py::arg("a"), py::arg("alpha_grid") = std::vector<double>{},
        py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("iters") = 50,
        "Tree identification report as a dict (1-based indices, as in the JSON format).");

    m.def(
        "count_trees",
        [](int n) {
            const auto builtins_int = py::module_::import("builtins").attr("int");
            return builtins_int(bfly::count_trees(n).str());
        },
        py::arg("n"), "Number of balanced binary cluster trees over n indices.");

    m.def(
        "canonical_trees",
        [](int n) {
            const auto trees = bfly::canonical_trees(n);
            return py::make_tuple(tree_levels(trees.rows), tree_levels(trees.cols));
        },
        py::arg("n"), "Canonical (row, column) trees as per-level lists of 0-based index sets.");
}
