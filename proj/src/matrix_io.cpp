#include "bureskit/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bureskit {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const CMatrix& m, MatrixKind kind) {
  const int n = int(m.rows());
  out << "bureskit-matrix v1\n";
  out << "kind " << (kind == MatrixKind::state ? "state" : "tangent") << "\n";
  out << "n " << n << "\n";
  out << "re\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << format_real(m(i, j).real());
    out << "\n";
  }
  out << "im\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << format_real(m(i, j).imag());
    out << "\n";
  }
}

std::string matrix_to_string(const CMatrix& m, MatrixKind kind) {
  std::ostringstream ss;
  write_matrix(ss, m, kind);
  return ss.str();
}

namespace {

struct LineReader {
  std::istream& in;
  const std::string& name;
  int lineno = 0;

  // next content line, skipping blanks and # comments; false at EOF
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      std::size_t end = line.find_last_not_of(" \t\r");
      line = line.substr(start, end - start + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError(name + ":" + std::to_string(lineno) + ": " + msg);
  }
};

void parse_plane(LineReader& r, int n, std::vector<double>& out) {
  out.clear();
  out.reserve(std::size_t(n) * n);
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!r.next(line)) r.fail("unexpected end of file inside a matrix block");
    std::istringstream row(line);
    double v;
    int count = 0;
    while (row >> v) {
      out.push_back(v);
      ++count;
    }
    std::string rest;
    row.clear();
    if (row >> rest) r.fail("unparseable number in row");
    if (count != n)
      r.fail("expected " + std::to_string(n) + " values in row, got " + std::to_string(count));
  }
}

}  // namespace

MatrixFile read_matrix(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) r.fail("empty document");
  if (line != "bureskit-matrix v1") r.fail("expected header 'bureskit-matrix v1'");

  MatrixFile file;
  int n = -1;
  bool have_kind = false;
  while (true) {
    if (!r.next(line)) r.fail("missing 're' block");
    if (line == "re") break;
    std::istringstream kv(line);
    std::string key;
    kv >> key;
    if (key == "kind") {
      std::string v;
      kv >> v;
      if (v == "state")
        file.kind = MatrixKind::state;
      else if (v == "tangent")
        file.kind = MatrixKind::tangent;
      else
        r.fail("kind must be 'state' or 'tangent'");
      have_kind = true;
    } else if (key == "n") {
      if (!(kv >> n) || n < 1) r.fail("n must be a positive integer");
    } else {
      r.fail("unknown key '" + key + "'");
    }
  }
  if (!have_kind) r.fail("missing 'kind'");
  if (n < 1) r.fail("missing 'n'");

  std::vector<double> re, im;
  parse_plane(r, n, re);
  if (!r.next(line) || line != "im") r.fail("missing 'im' block");
  parse_plane(r, n, im);

  file.entries.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      file.entries(i, j) = Complex(re[std::size_t(i) * n + j], im[std::size_t(i) * n + j]);
  return file;
}

MatrixFile load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  return read_matrix(in, path);
}

StateMatrix load_state(const std::string& path) {
  MatrixFile f = load_matrix(path);
  if (f.kind != MatrixKind::state)
    throw ValidationError(path + ": expected kind 'state'");
  try {
    return StateMatrix(std::move(f.entries));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

TangentMatrix load_tangent(const std::string& path) {
  MatrixFile f = load_matrix(path);
  // a state file is a valid tangent input (states are Hermitian)
  try {
    return TangentMatrix(std::move(f.entries));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace bureskit
