#ifndef TRADENULL_IO_HPP
#define TRADENULL_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tradenull/matrix.hpp"

namespace tradenull {

/// On-disk matrix encodings.
///  dense  - one line per row, `0`/`1` tokens separated by single spaces
///  csv    - same but comma-separated, no header, no quoting
///  sparse - first line `n_rows n_cols`, then one `r c` line (0-based) per 1-cell
enum class MatrixFormat { dense, csv, sparse };

/// Malformed input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

MatrixFormat format_from_name(const std::string& name);
std::string format_name(MatrixFormat format);

/// Picks csv for a `.csv` extension, dense otherwise. Sparse is never guessed.
MatrixFormat format_from_extension(const std::filesystem::path& path);

BinaryMatrix parse_matrix(std::istream& in, MatrixFormat format,
                          const std::string& source = "<stream>");
BinaryMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);

void format_matrix(const BinaryMatrix& m, std::ostream& out, MatrixFormat format);
void write_matrix(const BinaryMatrix& m, const std::filesystem::path& path, MatrixFormat format);

}  // namespace tradenull

#endif
