#pragma once

#include "dsgc/core/sparse_matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace dsgc {

// `.smtx` text format: a header line `n_rows n_cols nnz`, then one
// `row col value` triple per line, 0-indexed and sorted by (row, col).
// Values are printed in shortest round-trip form, so write/read is exact.

SparseMatrix read_smtx(std::istream& in, const std::string& source = "<stream>");
SparseMatrix read_smtx(const std::filesystem::path& path);

void write_smtx(std::ostream& out, const SparseMatrix& m);
void write_smtx(const std::filesystem::path& path, const SparseMatrix& m);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_exact(double v);

}  // namespace dsgc
