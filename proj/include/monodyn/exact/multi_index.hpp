#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace monodyn {

/// Strictly increasing subset {i_1 < ... < i_k} of {1, ..., m}, 1-based.
///
/// The lexicographic rank among all C(m, k) subsets is the public row/column
/// numbering of every exterior-power and pullback matrix in the library.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Validates strict increase and range [1, m].
  MultiIndex(std::vector<int> indices, int m);
  MultiIndex(std::initializer_list<int> indices, int m) : MultiIndex(std::vector<int>(indices), m) {}

  /// [k] = {1, ..., k}.
  static MultiIndex first(int k, int m);
  static MultiIndex unrank(std::size_t rank, int k, int m);
  /// All k-subsets of {1..m}, in lexicographic order.
  static std::vector<MultiIndex> all(int k, int m);

  std::size_t rank() const;
  MultiIndex complement() const;

  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return idx_.size(); }
  int operator[](std::size_t i) const { return idx_[i]; }
  const std::vector<int>& indices() const noexcept { return idx_; }

  /// "{1,3}".
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> idx_;
  int m_ = 0;
};

}  // namespace monodyn
