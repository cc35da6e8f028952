#ifndef BURESKIT_MATRIX_IO_HPP
#define BURESKIT_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "bureskit/types.hpp"

namespace bureskit {

enum class MatrixKind { state, tangent };

/// One matrix as read from (or about to be written to) the self-describing
/// text format:
///
///   bureskit-matrix v1
///   kind state            # or: tangent
///   n 2
///   re
///   1 0
///   0 2
///   im
///   0 0
///   0 0
///
/// Blank lines and lines starting with # are ignored. Numbers are printed
/// with 17 significant digits, so a write/read round trip is exact.
struct MatrixFile {
  MatrixKind kind = MatrixKind::state;
  CMatrix entries;
};

/// %.17g rendering; shortest decimal that round-trips the double.
std::string format_real(double v);

void write_matrix(std::ostream& out, const CMatrix& m, MatrixKind kind);
std::string matrix_to_string(const CMatrix& m, MatrixKind kind);

/// Parse; throws ValidationError with a line-numbered message on bad input.
MatrixFile read_matrix(std::istream& in, const std::string& name = "<stream>");
MatrixFile load_matrix(const std::string& path);

/// Load + type validation in one step.
StateMatrix load_state(const std::string& path);
TangentMatrix load_tangent(const std::string& path);

}  // namespace bureskit

#endif
