#include "tradenull/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tradenull {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& token, const std::string& source, int line_no) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(source, line_no, "malformed integer token '" + token + "'");
    return value;
}

int parse_bit(const std::string& token, const std::string& source, int line_no) {
    if (token == "0") return 0;
    if (token == "1") return 1;
    throw ParseError(source, line_no, "malformed cell token '" + token + "' (expected 0 or 1)");
}

// Strips one trailing '\r' so CRLF files parse like LF files.
bool get_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

BinaryMatrix parse_delimited(std::istream& in, char sep, const std::string& source) {
    std::vector<std::vector<int>> rows;
    std::string line;
    int line_no = 0;
    while (get_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            // allow a trailing blank line, reject interior ones
            if (in.peek() != std::char_traits<char>::eof())
                throw ParseError(source, line_no, "blank line inside matrix");
            break;
        }
        std::vector<int> row;
        for (const auto& token : split(line, sep)) row.push_back(parse_bit(token, source, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(source, line_no,
                             "ragged row: expected " + std::to_string(rows.front().size()) +
                                 " cells, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(source, line_no ? line_no : 1, "empty matrix");

    BinaryMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int r = 0; r < m.n_rows(); ++r)
        for (int c = 0; c < m.n_cols(); ++c)
            if (rows[r][c]) m.set(r, c, true);
    return m;
}

BinaryMatrix parse_sparse(std::istream& in, const std::string& source) {
    std::string line;
    if (!get_line(in, line)) throw ParseError(source, 1, "missing `n_rows n_cols` header");
    int line_no = 1;
    auto header = split(line, ' ');
    if (header.size() != 2)
        throw ParseError(source, 1, "expected `n_rows n_cols` header, got '" + line + "'");
    const int n_rows = parse_int(header[0], source, 1);
    const int n_cols = parse_int(header[1], source, 1);
    if (n_rows <= 0 || n_cols <= 0)
        throw ParseError(source, 1, "dimensions must be positive");

    BinaryMatrix m(n_rows, n_cols);
    while (get_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            if (in.peek() != std::char_traits<char>::eof())
                throw ParseError(source, line_no, "blank line inside cell list");
            break;
        }
        auto tokens = split(line, ' ');
        if (tokens.size() != 2)
            throw ParseError(source, line_no, "expected `r c` pair, got '" + line + "'");
        const int r = parse_int(tokens[0], source, line_no);
        const int c = parse_int(tokens[1], source, line_no);
        if (r < 0 || r >= n_rows || c < 0 || c >= n_cols)
            throw ParseError(source, line_no,
                             "cell (" + std::to_string(r) + ", " + std::to_string(c) +
                                 ") out of range for " + std::to_string(n_rows) + "x" +
                                 std::to_string(n_cols));
        if (m.get(r, c))
            throw ParseError(source, line_no,
                             "duplicate cell (" + std::to_string(r) + ", " + std::to_string(c) + ")");
        m.set(r, c, true);
    }
    return m;
}

void format_delimited(const BinaryMatrix& m, std::ostream& out, char sep) {
    for (int r = 0; r < m.n_rows(); ++r) {
        for (int c = 0; c < m.n_cols(); ++c) {
            if (c) out.put(sep);
            out.put(m.get(r, c) ? '1' : '0');
        }
        out.put('\n');
    }
}

void format_sparse(const BinaryMatrix& m, std::ostream& out) {
    out << m.n_rows() << ' ' << m.n_cols() << '\n';
    for (int r = 0; r < m.n_rows(); ++r)
        for (int c = 0; c < m.n_cols(); ++c)
            if (m.get(r, c)) out << r << ' ' << c << '\n';
}

}  // namespace

MatrixFormat format_from_name(const std::string& name) {
    if (name == "dense") return MatrixFormat::dense;
    if (name == "csv") return MatrixFormat::csv;
    if (name == "sparse") return MatrixFormat::sparse;
    throw std::invalid_argument("unknown matrix format '" + name + "'");
}

std::string format_name(MatrixFormat format) {
    switch (format) {
        case MatrixFormat::dense: return "dense";
        case MatrixFormat::csv: return "csv";
        case MatrixFormat::sparse: return "sparse";
    }
    return "dense";
}

MatrixFormat format_from_extension(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? MatrixFormat::csv : MatrixFormat::dense;
}

BinaryMatrix parse_matrix(std::istream& in, MatrixFormat format, const std::string& source) {
    switch (format) {
        case MatrixFormat::dense: return parse_delimited(in, ' ', source);
        case MatrixFormat::csv: return parse_delimited(in, ',', source);
        case MatrixFormat::sparse: return parse_sparse(in, source);
    }
    throw std::invalid_argument("unknown matrix format");
}

BinaryMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return parse_matrix(in, format, path.string());
}

void format_matrix(const BinaryMatrix& m, std::ostream& out, MatrixFormat format) {
    switch (format) {
        case MatrixFormat::dense: format_delimited(m, out, ' '); return;
        case MatrixFormat::csv: format_delimited(m, out, ','); return;
        case MatrixFormat::sparse: format_sparse(m, out); return;
    }
}

void write_matrix(const BinaryMatrix& m, const std::filesystem::path& path, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    format_matrix(m, out, format);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace tradenull
