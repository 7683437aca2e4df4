#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncb {

/// Dense bit-indexed set of small non-negative integers (graph nodes).
class NodeSet {
public:
  static constexpr int kMaxSize = 128;

  NodeSet() = default;
  NodeSet(std::initializer_list<int> elems) {
    for (int v : elems)
      insert(v);
  }

  /// {0, ..., n-1}.
  static NodeSet range(int n) {
    check(n == 0 ? 0 : n - 1);
    NodeSet s;
    for (int w = 0; w < kWords; ++w) {
      int lo = w * 64;
      if (n >= lo + 64)
        s.w_[w] = ~uint64_t(0);
      else if (n > lo)
        s.w_[w] = (uint64_t(1) << (n - lo)) - 1;
    }
    return s;
  }

  static NodeSet fromVector(const std::vector<int> &elems) {
    NodeSet s;
    for (int v : elems)
      s.insert(v);
    return s;
  }

  bool contains(int v) const {
    return v >= 0 && v < kMaxSize && (w_[v >> 6] >> (v & 63)) & 1;
  }
  void insert(int v) {
    check(v);
    w_[v >> 6] |= uint64_t(1) << (v & 63);
  }
  void erase(int v) {
    check(v);
    w_[v >> 6] &= ~(uint64_t(1) << (v & 63));
  }

  int size() const {
    int c = 0;
    for (auto w : w_)
      c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w)
        return false;
    return true;
  }

  bool isSubsetOf(const NodeSet &o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & ~o.w_[i])
        return false;
    return true;
  }
  bool intersects(const NodeSet &o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & o.w_[i])
        return true;
    return false;
  }

  NodeSet &operator|=(const NodeSet &o) {
    for (int i = 0; i < kWords; ++i)
      w_[i] |= o.w_[i];
    return *this;
  }
  NodeSet &operator&=(const NodeSet &o) {
    for (int i = 0; i < kWords; ++i)
      w_[i] &= o.w_[i];
    return *this;
  }
  /// Set difference.
  NodeSet &operator-=(const NodeSet &o) {
    for (int i = 0; i < kWords; ++i)
      w_[i] &= ~o.w_[i];
    return *this;
  }
  friend NodeSet operator|(NodeSet a, const NodeSet &b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet &b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet &b) { return a -= b; }

  friend bool operator==(const NodeSet &a, const NodeSet &b) = default;

  /// Smallest element, or -1 when empty.
  int first() const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i])
        return i * 64 + std::countr_zero(w_[i]);
    return -1;
  }

  template <class F> void forEach(F &&f) const {
    for (int i = 0; i < kWords; ++i)
      for (uint64_t w = w_[i]; w; w &= w - 1)
        f(i * 64 + std::countr_zero(w));
  }

  std::vector<int> toVector() const {
    std::vector<int> out;
    forEach([&](int v) { out.push_back(v); });
    return out;
  }

  /// "{1,5}" with every element shifted by `offset` (1 for documents).
  std::string str(int offset = 1) const {
    std::string s = "{";
    bool firstElem = true;
    forEach([&](int v) {
      if (!firstElem)
        s += ',';
      s += std::to_string(v + offset);
      firstElem = false;
    });
    return s + "}";
  }

  size_t hash() const {
    size_t h = 0;
    for (auto w : w_)
      h = h * 0x9e3779b97f4a7c15ULL ^ std::hash<uint64_t>{}(w);
    return h;
  }

private:
  static constexpr int kWords = kMaxSize / 64;
  static void check(int v) {
    if (v < 0 || v >= kMaxSize)
      throw std::out_of_range("node index " + std::to_string(v) +
                              " outside NodeSet capacity");
  }
  uint64_t w_[kWords] = {};
};

/// Canonical order: lexicographic on the sorted element lists.
inline bool canonicalLess(const NodeSet &a, const NodeSet &b) {
  return a.toVector() < b.toVector();
}

struct NodeSetHash {
  size_t operator()(const NodeSet &s) const { return s.hash(); }
};

} // namespace ncb
