#include "dsgc/core/smtx.hpp"

#include "dsgc/core/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dsgc {

namespace {

template <class T>
T parse_field(std::string_view tok, const std::string& source, std::size_t line_no) {
    T value{};
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw DataError(source + ":" + std::to_string(line_no) + ": cannot parse '" + std::string(tok) + "'");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

SparseMatrix read_smtx(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw DataError(source + ": empty .smtx input");
    ++line_no;
    auto head = split_ws(line);
    if (head.size() != 3) throw DataError(source + ":1: header must be 'n_rows n_cols nnz'");
    const auto rows = parse_field<std::size_t>(head[0], source, line_no);
    const auto cols = parse_field<std::size_t>(head[1], source, line_no);
    const auto nnz = parse_field<std::size_t>(head[2], source, line_no);

    std::vector<std::size_t> offsets(rows + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(nnz);
    vals.reserve(nnz);
    std::size_t prev_row = 0, prev_col = 0;
    while (vals.size() < nnz && std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok.size() != 3) throw DataError(source + ":" + std::to_string(line_no) + ": expected 'row col value'");
        const auto r = parse_field<std::size_t>(tok[0], source, line_no);
        const auto c = parse_field<std::size_t>(tok[1], source, line_no);
        const auto v = parse_field<double>(tok[2], source, line_no);
        if (r >= rows || c >= cols)
            throw DataError(source + ":" + std::to_string(line_no) + ": index out of range");
        if (!vals.empty() && (r < prev_row || (r == prev_row && c <= prev_col)))
            throw DataError(source + ":" + std::to_string(line_no) + ": entries not sorted by (row, col)");
        prev_row = r;
        prev_col = c;
        ++offsets[r + 1];
        col_idx.push_back(static_cast<Index>(c));
        vals.push_back(v);
    }
    if (vals.size() != nnz)
        throw DataError(source + ": header declares " + std::to_string(nnz) + " entries, found " +
                        std::to_string(vals.size()));
    for (std::size_t i = 0; i < rows; ++i) offsets[i + 1] += offsets[i];
    return SparseMatrix(rows, cols, std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix read_smtx(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_smtx(in, path.string());
}

std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_smtx(std::ostream& out, const SparseMatrix& m) {
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto cols = m.row_cols(i);
        auto vals = m.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) out << i << ' ' << cols[p] << ' ' << format_exact(vals[p]) << '\n';
    }
}

void write_smtx(const std::filesystem::path& path, const SparseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_smtx(out, m);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace dsgc
