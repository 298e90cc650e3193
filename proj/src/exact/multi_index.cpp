#include "monodyn/exact/multi_index.hpp"

#include "monodyn/error.hpp"
#include "monodyn/exact/number.hpp"

namespace monodyn {

namespace {

std::size_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)).get_ui();
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> indices, int m) : idx_(std::move(indices)), m_(m) {
  if (m < 1) throw OutOfRange("multi-index ambient size must be >= 1");
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i] < 1 || idx_[i] > m) {
      throw OutOfRange("multi-index entry " + std::to_string(idx_[i]) + " outside [1, " +
                       std::to_string(m) + "]");
    }
    if (i > 0 && idx_[i] <= idx_[i - 1]) throw OutOfRange("multi-index not strictly increasing");
  }
}

MultiIndex MultiIndex::first(int k, int m) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return MultiIndex(std::move(v), m);
}

std::size_t MultiIndex::rank() const {
  // Count subsets that precede this one lexicographically.
  std::size_t r = 0;
  int k = static_cast<int>(idx_.size());
  int prev = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (int v = prev + 1; v < idx_[static_cast<std::size_t>(pos)]; ++v) {
      r += choose(m_ - v, k - pos - 1);
    }
    prev = idx_[static_cast<std::size_t>(pos)];
  }
  return r;
}

MultiIndex MultiIndex::unrank(std::size_t rank, int k, int m) {
  if (k < 0 || k > m) throw OutOfRange("subset size out of range");
  if (rank >= choose(m, k)) throw OutOfRange("multi-index rank out of range");
  std::vector<int> v;
  int prev = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (int c = prev + 1; c <= m; ++c) {
      std::size_t block = choose(m - c, k - pos - 1);
      if (rank < block) {
        v.push_back(c);
        prev = c;
        break;
      }
      rank -= block;
    }
  }
  return MultiIndex(std::move(v), m);
}

std::vector<MultiIndex> MultiIndex::all(int k, int m) {
  if (k < 0 || k > m) throw OutOfRange("subset size out of range");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(cur, m);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

MultiIndex MultiIndex::complement() const {
  std::vector<int> v;
  std::size_t p = 0;
  for (int i = 1; i <= m_; ++i) {
    if (p < idx_.size() && idx_[p] == i) {
      ++p;
    } else {
      v.push_back(i);
    }
  }
  return MultiIndex(std::move(v), m_);
}

std::string MultiIndex::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx_[i]);
  }
  return s + "}";
}

}  // namespace monodyn
