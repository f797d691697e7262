#pragma once

#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xorsynth {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/*! \brief Packed Boolean vector over GF(2).
 *
 * Coordinates are 1-indexed (x1 ... xn).  Words are packed with the
 * lowest coordinate in the least significant bit, so support-size and
 * disjointness queries run one popcount per word.  Bits beyond the
 * declared length are always zero.
 */
class bit_vector {
public:
  bit_vector() = default;

  explicit bit_vector(std::size_t length)
      : len_(length), words_((length + 63) / 64, 0) {}

  /// The unit vector e^(i) with coordinate i set.
  static bit_vector unit(std::size_t length, std::size_t i) {
    bit_vector v(length);
    v.set(i, true);
    return v;
  }

  std::size_t length() const { return len_; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u;
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << ((i - 1) & 63);
    if (value) {
      words_[(i - 1) >> 6] |= mask;
    } else {
      words_[(i - 1) >> 6] &= ~mask;
    }
  }

  std::size_t support_size() const {
    std::size_t count = 0;
    for (auto w : words_) {
      count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
  }

  /// Ascending 1-based indices of the nonzero coordinates.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    out.reserve(support_size());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        out.push_back(wi * 64 + static_cast<std::size_t>(b) + 1);
        w &= w - 1;
      }
    }
    return out;
  }

  bool is_zero() const {
    for (auto w : words_) {
      if (w != 0) {
        return false;
      }
    }
    return true;
  }

  bool disjoint_with(const bit_vector& other) const {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) {
        return false;
      }
    }
    return true;
  }

  /// Coordinatewise >=: every coordinate set in `other` is set here too.
  bool covers(const bit_vector& other) const {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (other.words_[i] & ~words_[i]) {
        return false;
      }
    }
    return true;
  }

  /// Lowest coordinate set in both vectors, or 0 if the supports are disjoint.
  std::size_t first_common(const bit_vector& other) const {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t w = words_[i] & other.words_[i];
      if (w != 0) {
        return i * 64 + static_cast<std::size_t>(std::countr_zero(w)) + 1;
      }
    }
    return 0;
  }

  /// Lowest coordinate set in `other` but not here, or 0 if covers(other).
  std::size_t first_uncovered(const bit_vector& other) const {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t w = other.words_[i] & ~words_[i];
      if (w != 0) {
        return i * 64 + static_cast<std::size_t>(std::countr_zero(w)) + 1;
      }
    }
    return 0;
  }

  bit_vector& operator^=(const bit_vector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] ^= other.words_[i];
    }
    return *this;
  }

  bit_vector& operator|=(const bit_vector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
    }
    return *this;
  }

  bit_vector& operator&=(const bit_vector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= other.words_[i];
    }
    return *this;
  }

  friend bit_vector operator^(bit_vector a, const bit_vector& b) { return a ^= b; }
  friend bit_vector operator|(bit_vector a, const bit_vector& b) { return a |= b; }
  friend bit_vector operator&(bit_vector a, const bit_vector& b) { return a &= b; }

  friend bool operator==(const bit_vector& a, const bit_vector& b) = default;

  /// Lexicographic by coordinate: decided by the lowest differing coordinate.
  friend bool operator<(const bit_vector& a, const bit_vector& b) {
    if (a.len_ != b.len_) {
      return a.len_ < b.len_;
    }
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        const int bitpos = std::countr_zero(diff);
        return ((a.words_[i] >> bitpos) & 1u) == 0;
      }
    }
    return false;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 1; i <= len_; ++i) {
      if (get(i)) {
        s[i - 1] = '1';
      }
    }
    return s;
  }

  /// Parses a row of '0'/'1' characters.
  static bit_vector parse(std::string_view text) {
    bit_vector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        v.set(i + 1, true);
      } else if (text[i] != '0') {
        throw parse_error("bit_vector: invalid character '" +
                          std::string(1, text[i]) + "'");
      }
    }
    return v;
  }

private:
  void check_index(std::size_t i) const {
    if (i == 0 || i > len_) {
      throw std::out_of_range("bit_vector: coordinate " + std::to_string(i) +
                              " out of range 1.." + std::to_string(len_));
    }
  }

  void check_same_length(const bit_vector& other) const {
    if (len_ != other.len_) {
      throw std::invalid_argument("bit_vector: length mismatch");
    }
  }

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Inner product over GF(2).
inline bool dot(const bit_vector& a, const bit_vector& b) {
  bit_vector t = a;
  t &= b;
  return t.support_size() % 2 == 1;
}

/*! \brief Dense m x n Boolean matrix stored as m packed rows. */
class bit_matrix {
public:
  bit_matrix() = default;

  bit_matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows, bit_vector(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return row(r).get(c); }

  void set(std::size_t r, std::size_t c, bool value) {
    check_row(r);
    data_[r - 1].set(c, value);
  }

  const bit_vector& row(std::size_t r) const {
    check_row(r);
    return data_[r - 1];
  }

  void set_row(std::size_t r, bit_vector v) {
    check_row(r);
    if (v.length() != cols_) {
      throw std::invalid_argument("bit_matrix: row length mismatch");
    }
    data_[r - 1] = std::move(v);
  }

  friend bool operator==(const bit_matrix& a, const bit_matrix& b) = default;

private:
  void check_row(std::size_t r) const {
    if (r == 0 || r > rows_) {
      throw std::out_of_range("bit_matrix: row " + std::to_string(r) +
                              " out of range 1.." + std::to_string(rows_));
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<bit_vector> data_;
};

/// Column c of the matrix as a vector over the rows.
inline bit_vector column(const bit_matrix& a, std::size_t c) {
  bit_vector v(a.rows());
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    if (a.get(r, c)) {
      v.set(r, true);
    }
  }
  return v;
}

/// y = Ax over GF(2).
inline bit_vector matvec(const bit_matrix& a, const bit_vector& x) {
  if (x.length() != a.cols()) {
    throw std::invalid_argument("matvec: vector length " +
                                std::to_string(x.length()) +
                                " != matrix columns " + std::to_string(a.cols()));
  }
  bit_vector y(a.rows());
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    y.set(r, dot(a.row(r), x));
  }
  return y;
}

/// Rank over GF(2).  Eliminates on a copy; the argument is taken by value.
inline std::size_t rank_gf2(bit_matrix a) {
  std::vector<bit_vector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    rows.push_back(a.row(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 1; c <= a.cols() && rank < rows.size(); ++c) {
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r].get(c)) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) {
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r].get(c)) {
        rows[r] ^= rows[rank];
      }
    }
    ++rank;
  }
  return rank;
}

/// Determinant over GF(2): 1 iff the square matrix has full rank.
inline int det_gf2(const bit_matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("det_gf2: matrix is not square");
  }
  return rank_gf2(a) == a.rows() ? 1 : 0;
}

/*! \brief Parses the shared matrix text format.
 *
 * First line "m n"; then m lines, each a string of exactly n characters
 * from {0,1}.  Ragged rows, stray characters, and missing or surplus
 * lines are rejected.
 */
inline bit_matrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) {
    throw parse_error("matrix: empty input");
  }

  std::size_t m = 0;
  std::size_t n = 0;
  {
    const std::string_view header = lines[0];
    const char* begin = header.data();
    const char* end = header.data() + header.size();
    auto r1 = std::from_chars(begin, end, m);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') {
      throw parse_error("matrix: malformed header line, expected \"m n\"");
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, n);
    if (r2.ec != std::errc{} || r2.ptr != end) {
      throw parse_error("matrix: malformed header line, expected \"m n\"");
    }
  }
  if (m == 0 || n == 0) {
    throw parse_error("matrix: zero dimension");
  }
  if (lines.size() < m + 1) {
    throw parse_error("matrix: expected " + std::to_string(m) + " rows, got " +
                      std::to_string(lines.size() - 1));
  }
  for (std::size_t i = m + 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) {
      throw parse_error("matrix: unexpected trailing content");
    }
  }

  bit_matrix a(m, n);
  for (std::size_t r = 1; r <= m; ++r) {
    const std::string_view line = lines[r];
    if (line.size() != n) {
      throw parse_error("matrix: ragged row " + std::to_string(r) + " (length " +
                        std::to_string(line.size()) + ", expected " +
                        std::to_string(n) + ")");
    }
    a.set_row(r, bit_vector::parse(line));
  }
  return a;
}

inline std::string format_matrix(const bit_matrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    out += a.row(r).to_string();
    out += '\n';
  }
  return out;
}

} // namespace xorsynth
