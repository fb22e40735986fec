#include "ifipm/sdpa_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ifipm {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '"' || ch == '*';
  }
  return true;  // blank
}

struct LineReader {
  std::istream& in;
  int lineno = 0;

  // Next non-comment, non-blank line; false at end of file.
  bool next(std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (!is_comment_or_blank(line)) {
        out = line;
        return true;
      }
    }
    return false;
  }
};

std::vector<double> parse_numbers(const std::string& line, int lineno,
                                  int expect_at_least) {
  std::vector<double> vals;
  std::istringstream is(line);
  // SDPA files in the wild separate with commas, parentheses or braces.
  std::string tok;
  while (is >> tok) {
    std::string cleaned;
    for (char ch : tok)
      if (ch != ',' && ch != '(' && ch != ')' && ch != '{' && ch != '}')
        cleaned += ch;
    if (cleaned.empty()) continue;
    try {
      size_t used = 0;
      double v = std::stod(cleaned, &used);
      if (used != cleaned.size()) throw std::invalid_argument(cleaned);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected a number, got '" + tok + "'");
    }
  }
  if (static_cast<int>(vals.size()) < expect_at_least)
    throw ParseError(lineno, "expected at least " +
                                 std::to_string(expect_at_least) + " values");
  return vals;
}

}  // namespace

SdoProblem read_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  LineReader rd{in};
  std::string line;

  if (!rd.next(line)) throw ParseError(rd.lineno, "missing constraint count");
  int m = static_cast<int>(parse_numbers(line, rd.lineno, 1)[0]);
  if (m < 1) throw ParseError(rd.lineno, "constraint count must be positive");

  if (!rd.next(line)) throw ParseError(rd.lineno, "missing block count");
  int nblocks = static_cast<int>(parse_numbers(line, rd.lineno, 1)[0]);
  if (nblocks < 1) throw ParseError(rd.lineno, "block count must be positive");

  if (!rd.next(line)) throw ParseError(rd.lineno, "missing block sizes");
  std::vector<double> sizes = parse_numbers(line, rd.lineno, nblocks);
  std::vector<int> offset(nblocks + 1, 0);
  for (int k = 0; k < nblocks; ++k) {
    int sz = static_cast<int>(std::abs(sizes[k]));
    if (sz < 1) throw ParseError(rd.lineno, "block size must be nonzero");
    offset[k + 1] = offset[k] + sz;
  }
  int n = offset[nblocks];

  if (!rd.next(line)) throw ParseError(rd.lineno, "missing right-hand side");
  std::vector<double> bvals = parse_numbers(line, rd.lineno, m);
  Vector b(m);
  for (int i = 0; i < m; ++i) b(i) = bvals[i];

  Matrix c = Matrix::Zero(n, n);
  std::vector<Matrix> a(m, Matrix::Zero(n, n));
  while (rd.next(line)) {
    std::vector<double> q = parse_numbers(line, rd.lineno, 5);
    if (q.size() != 5)
      throw ParseError(rd.lineno, "expected 'matno blkno i j value'");
    int matno = static_cast<int>(q[0]);
    int blk = static_cast<int>(q[1]);
    int i = static_cast<int>(q[2]);
    int j = static_cast<int>(q[3]);
    double v = q[4];
    if (matno < 0 || matno > m) throw ParseError(rd.lineno, "matno out of range");
    if (blk < 1 || blk > nblocks) throw ParseError(rd.lineno, "blkno out of range");
    int bsz = offset[blk] - offset[blk - 1];
    if (i < 1 || j < 1 || i > bsz || j > bsz)
      throw ParseError(rd.lineno, "index out of block range");
    if (i > j) std::swap(i, j);  // upper triangle
    int gi = offset[blk - 1] + i - 1;
    int gj = offset[blk - 1] + j - 1;
    Matrix& target = (matno == 0) ? c : a[matno - 1];
    target(gi, gj) = v;
    target(gj, gi) = v;
  }

  std::vector<SymMatrix> as;
  as.reserve(m);
  for (int i = 0; i < m; ++i)
    as.push_back(SymMatrix::from_symmetric_unchecked(std::move(a[i])));
  return SdoProblem(std::move(as), std::move(b),
                    SymMatrix::from_symmetric_unchecked(std::move(c)));
}

void write_sdpa(const SdoProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open '" + path + "' for writing");
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << p.m() << "\n1\n" << p.n() << "\n";
  for (int i = 0; i < p.m(); ++i)
    out << fmt(p.b()(i)) << (i + 1 < p.m() ? " " : "\n");
  auto emit = [&](int matno, const Matrix& g) {
    for (int i = 0; i < p.n(); ++i)
      for (int j = i; j < p.n(); ++j)
        if (g(i, j) != 0.0)
          out << matno << " 1 " << (i + 1) << " " << (j + 1) << " "
              << fmt(g(i, j)) << "\n";
  };
  emit(0, p.c().mat());
  for (int i = 0; i < p.m(); ++i) emit(i + 1, p.a()[i].mat());
}

}  // namespace ifipm
