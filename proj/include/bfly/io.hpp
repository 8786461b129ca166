#pragma once

#include "bfly/factorization.hpp"
#include "bfly/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

// Text formats:
//  - "cmx v1": line 1 `cmx <rows> <cols>`, then one line per row with
//    whitespace-separated `re,im` tokens, 17 significant digits.
//  - permutations: line 1 `perm <N>`, line 2 the N images, 1-based.
//  - factor sets: one cmx file per factor plus a JSON manifest with N, L and
//    the file order.
namespace bfly {

void write_cmx(std::ostream& os, const ComplexMatrix& m);
void write_cmx(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_cmx(std::istream& is);
ComplexMatrix read_cmx(const std::filesystem::path& path);

void write_perm(std::ostream& os, const Permutation& p);
void write_perm(const std::filesystem::path& path, const Permutation& p);
Permutation read_perm(std::istream& is);
Permutation read_perm(const std::filesystem::path& path);

/// Writes `<stem>_01.cmx` ... plus `<stem>_manifest.json` into `dir`.
void write_factors(const std::filesystem::path& dir, const std::string& stem,
                   const ButterflyFactors& factors);
ButterflyFactors read_factors(const std::filesystem::path& manifest);

}  // namespace bfly
