#pragma once

// Finite groups: symmetric S_n, elementary abelian C_2^k and cyclic C_n.
//
// Permutations are stored in one-line notation with 1-based images and are
// composed right-to-left, (gh)(i) = g(h(i)). Bit vectors are stored with
// position 1 as the leftmost bit. Enumeration order is lexicographic on the
// stored data, which for bit vectors is binary order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdsg/errors.hpp"

namespace mdsg {

enum class GroupKind { symmetric, elementary_abelian_2, cyclic };

inline constexpr std::size_t kDefaultElementCap = 50'000;

class GroupSpec {
 public:
  static GroupSpec symmetric(int n) { return GroupSpec(GroupKind::symmetric, n); }
  static GroupSpec elementary_abelian_2(int k) { return GroupSpec(GroupKind::elementary_abelian_2, k); }
  static GroupSpec cyclic(int n) { return GroupSpec(GroupKind::cyclic, n); }

  GroupKind kind() const { return kind_; }
  /// n for S_n and C_n, k for C_2^k.
  int size() const { return size_; }

  /// |G|; throws TooLargeError when it does not fit in 64 bits.
  std::uint64_t order() const {
    switch (kind_) {
      case GroupKind::symmetric: {
        if (size_ > 20) throw TooLargeError("order of S_n overflows 64 bits for n > 20", 20);
        std::uint64_t f = 1;
        for (int i = 2; i <= size_; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
      }
      case GroupKind::elementary_abelian_2:
        if (size_ > 62) throw TooLargeError("order of C_2^k overflows 64 bits for k > 62", 62);
        return std::uint64_t{1} << size_;
      case GroupKind::cyclic:
        return static_cast<std::uint64_t>(size_);
    }
    return 0;
  }

  bool is_abelian() const { return kind_ != GroupKind::symmetric || size_ <= 2; }

  std::string name() const {
    switch (kind_) {
      case GroupKind::symmetric: return "S" + std::to_string(size_);
      case GroupKind::elementary_abelian_2: return "C2^" + std::to_string(size_);
      case GroupKind::cyclic: return "C" + std::to_string(size_);
    }
    return {};
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(GroupKind kind, int size) : kind_(kind), size_(size) {
    if (size < 1) throw std::invalid_argument("group size parameter must be >= 1");
  }

  GroupKind kind_;
  int size_;
};

class GroupElement {
 public:
  GroupElement() = default;

  /// One-line images, 1-based: {2,3,1} maps 1->2, 2->3, 3->1.
  static GroupElement permutation(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
        throw InvalidElementError("not a permutation of 1..n");
      seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return GroupElement(GroupKind::symmetric, std::move(images));
  }
  static GroupElement bits(std::vector<int> bits) {
    for (int b : bits)
      if (b != 0 && b != 1) throw InvalidElementError("bit vector entries must be 0 or 1");
    return GroupElement(GroupKind::elementary_abelian_2, std::move(bits));
  }
  static GroupElement residue(int r) {
    if (r < 0) throw InvalidElementError("residue must be non-negative");
    return GroupElement(GroupKind::cyclic, {r});
  }

  GroupKind kind() const { return kind_; }
  const std::vector<int>& data() const { return data_; }
  int operator[](std::size_t i) const { return data_[i]; }
  std::size_t length() const { return data_.size(); }
  int value() const { return data_.at(0); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    return a.data_ <=> b.data_;
  }

 private:
  GroupElement(GroupKind kind, std::vector<int> data) : kind_(kind), data_(std::move(data)) {}

  GroupKind kind_ = GroupKind::cyclic;
  std::vector<int> data_{0};
};

/// Weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("partition parts must be positive");
    if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>()))
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  std::size_t length() const { return parts_.size(); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

struct ConjugacyClass {
  GroupElement representative;
  std::uint64_t size = 1;
  std::variant<Partition, GroupElement> label;
};

// ---------------------------------------------------------------------------
// Membership and arithmetic

inline bool belongs_to(const GroupSpec& spec, const GroupElement& g) {
  if (g.kind() != spec.kind()) return false;
  switch (spec.kind()) {
    case GroupKind::symmetric:
    case GroupKind::elementary_abelian_2:
      return g.length() == static_cast<std::size_t>(spec.size());
    case GroupKind::cyclic:
      return g.length() == 1 && g.value() < spec.size();
  }
  return false;
}

inline void require_member(const GroupSpec& spec, const GroupElement& g) {
  if (!belongs_to(spec, g)) throw InvalidElementError("element does not belong to " + spec.name());
}

inline GroupElement identity(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v(static_cast<std::size_t>(spec.size()));
      std::iota(v.begin(), v.end(), 1);
      return GroupElement::permutation(std::move(v));
    }
    case GroupKind::elementary_abelian_2:
      return GroupElement::bits(std::vector<int>(static_cast<std::size_t>(spec.size()), 0));
    case GroupKind::cyclic:
      return GroupElement::residue(0);
  }
  return {};
}

/// (gh)(i) = g(h(i)); XOR; addition mod n.
inline GroupElement multiply(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  require_member(spec, g);
  require_member(spec, h);
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v(g.length());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = g[static_cast<std::size_t>(h[i] - 1)];
      return GroupElement::permutation(std::move(v));
    }
    case GroupKind::elementary_abelian_2: {
      std::vector<int> v(g.length());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = g[i] ^ h[i];
      return GroupElement::bits(std::move(v));
    }
    case GroupKind::cyclic:
      return GroupElement::residue((g.value() + h.value()) % spec.size());
  }
  return {};
}

inline GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  require_member(spec, g);
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v(g.length());
      for (std::size_t i = 0; i < v.size(); ++i) v[static_cast<std::size_t>(g[i] - 1)] = static_cast<int>(i) + 1;
      return GroupElement::permutation(std::move(v));
    }
    case GroupKind::elementary_abelian_2:
      return g;
    case GroupKind::cyclic:
      return GroupElement::residue((spec.size() - g.value()) % spec.size());
  }
  return {};
}

/// h g h^-1
inline GroupElement conjugate(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  return multiply(spec, multiply(spec, h, g), inverse(spec, h));
}

// ---------------------------------------------------------------------------
// Enumeration and indexing

inline void require_enumerable(const GroupSpec& spec, std::size_t cap) {
  bool too_large = false;
  try {
    too_large = spec.order() > cap;
  } catch (const TooLargeError&) {
    too_large = true;
  }
  if (too_large)
    throw TooLargeError(spec.name() + " has more elements than the enumeration cap of " + std::to_string(cap), cap);
}

/// All elements in lexicographic order.
inline std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, std::size_t cap = kDefaultElementCap) {
  require_enumerable(spec, cap);
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v(static_cast<std::size_t>(spec.size()));
      std::iota(v.begin(), v.end(), 1);
      do {
        out.push_back(GroupElement::permutation(v));
      } while (std::next_permutation(v.begin(), v.end()));
      break;
    }
    case GroupKind::elementary_abelian_2: {
      const int k = spec.size();
      for (std::uint64_t x = 0; x < spec.order(); ++x) {
        std::vector<int> b(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = static_cast<int>((x >> (k - 1 - i)) & 1U);
        out.push_back(GroupElement::bits(std::move(b)));
      }
      break;
    }
    case GroupKind::cyclic:
      for (int r = 0; r < spec.size(); ++r) out.push_back(GroupElement::residue(r));
      break;
  }
  return out;
}

/// Position of g in enumerate_elements(spec).
inline std::uint64_t element_index(const GroupSpec& spec, const GroupElement& g) {
  require_member(spec, g);
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      // Lehmer code rank
      const std::size_t n = g.length();
      std::uint64_t rank = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
          if (g[j] < g[i]) ++smaller;
        rank = rank * (n - i) + smaller;
      }
      return rank;
    }
    case GroupKind::elementary_abelian_2: {
      std::uint64_t x = 0;
      for (int b : g.data()) x = (x << 1) | static_cast<std::uint64_t>(b);
      return x;
    }
    case GroupKind::cyclic:
      return static_cast<std::uint64_t>(g.value());
  }
  return 0;
}

inline GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v(static_cast<std::size_t>(spec.size()));
      std::iota(v.begin(), v.end(), 1);
      for (std::size_t i = v.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(v[i - 1], v[pick(rng)]);
      }
      return GroupElement::permutation(std::move(v));
    }
    case GroupKind::elementary_abelian_2: {
      std::vector<int> b(static_cast<std::size_t>(spec.size()));
      for (auto& x : b) x = static_cast<int>(rng() & 1U);
      return GroupElement::bits(std::move(b));
    }
    case GroupKind::cyclic: {
      std::uniform_int_distribution<int> pick(0, spec.size() - 1);
      return GroupElement::residue(pick(rng));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Partitions and conjugacy classes

/// All partitions of n in reverse-lexicographic order ([n] first, [1^n] last).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw std::invalid_argument("partitions_of requires n >= 1");
  std::vector<Partition> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

inline Partition cycle_type(const GroupElement& g) {
  if (g.kind() != GroupKind::symmetric) throw InvalidElementError("cycle_type requires a permutation");
  const std::size_t n = g.length();
  std::vector<bool> seen(n, false);
  std::vector<int> lengths;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(g[i] - 1)) {
      seen[i] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return Partition(std::move(lengths));
}

/// Permutation with consecutive cycles (1..p1)(p1+1..p1+p2)...
inline GroupElement partition_representative(const Partition& shape) {
  std::vector<int> v(static_cast<std::size_t>(shape.n()));
  int start = 0;
  for (int len : shape.parts()) {
    for (int j = 0; j < len; ++j) v[static_cast<std::size_t>(start + j)] = start + (j + 1) % len + 1;
    start += len;
  }
  return GroupElement::permutation(std::move(v));
}

/// n! / prod_i (i^{m_i} m_i!)
inline std::uint64_t class_size(const Partition& shape) {
  std::uint64_t size = GroupSpec::symmetric(shape.n()).order();
  std::map<int, int> multiplicity;
  for (int p : shape.parts()) ++multiplicity[p];
  for (auto [part, m] : multiplicity) {
    for (int j = 0; j < m; ++j) size /= static_cast<std::uint64_t>(part);
    for (int j = 2; j <= m; ++j) size /= static_cast<std::uint64_t>(j);
  }
  return size;
}

/// Number of conjugacy classes (without building them).
inline std::uint64_t class_count(const GroupSpec& spec) {
  if (spec.kind() == GroupKind::symmetric) return partitions_of(spec.size()).size();
  return spec.order();
}

/// S_n: one class per partition in ascending lexicographic order, so the
/// identity class [1^n] comes first. Abelian groups: singleton classes in
/// element order.
inline std::vector<ConjugacyClass> conjugacy_classes(const GroupSpec& spec, std::size_t cap = kDefaultElementCap) {
  std::vector<ConjugacyClass> out;
  if (spec.kind() == GroupKind::symmetric) {
    auto parts = partitions_of(spec.size());
    std::reverse(parts.begin(), parts.end());
    for (auto& p : parts) out.push_back({partition_representative(p), class_size(p), p});
    return out;
  }
  for (auto& g : enumerate_elements(spec, cap)) out.push_back({g, 1, g});
  return out;
}

/// Maps elements to their conjugacy class index (aligned with conjugacy_classes).
class ClassIndexer {
 public:
  explicit ClassIndexer(const GroupSpec& spec) : spec_(spec) {
    if (spec.kind() == GroupKind::symmetric) {
      auto parts = partitions_of(spec.size());
      std::reverse(parts.begin(), parts.end());
      for (std::size_t i = 0; i < parts.size(); ++i) index_.emplace(parts[i], i);
    }
  }

  std::size_t operator()(const GroupElement& g) const {
    if (spec_.kind() == GroupKind::symmetric) {
      require_member(spec_, g);
      return index_.at(cycle_type(g));
    }
    return static_cast<std::size_t>(element_index(spec_, g));
  }

  std::size_t index_of(const Partition& p) const { return index_.at(p); }

 private:
  GroupSpec spec_;
  std::map<Partition, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Text forms

/// "2,3,1" for permutations, "0110" for bit vectors, "3" for residues.
inline std::string to_text(const GroupElement& g) {
  std::string s;
  switch (g.kind()) {
    case GroupKind::symmetric:
      for (std::size_t i = 0; i < g.length(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
      break;
    case GroupKind::elementary_abelian_2:
      for (int b : g.data()) s += static_cast<char>('0' + b);
      break;
    case GroupKind::cyclic:
      s = std::to_string(g.value());
      break;
  }
  return s;
}

/// Cycle notation with fixed points omitted, "e" for the identity: [2,3,1] -> "(1 2 3)".
inline std::string to_cycle_notation(const GroupElement& g) {
  if (g.kind() != GroupKind::symmetric) return to_text(g);
  const std::size_t n = g.length();
  std::vector<bool> seen(n, false);
  std::string s;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || g[start] == static_cast<int>(start) + 1) continue;
    s += "(";
    bool first = true;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(g[i] - 1)) {
      seen[i] = true;
      s += (first ? "" : " ") + std::to_string(i + 1);
      first = false;
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

inline GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  auto parse_int = [&](std::string_view t) {
    if (t.empty()) throw InvalidElementError("empty element component in '" + std::string(text) + "'");
    int v = 0;
    for (char c : t) {
      if (c < '0' || c > '9') throw InvalidElementError("bad element text '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  GroupElement g;
  switch (spec.kind()) {
    case GroupKind::symmetric: {
      std::vector<int> v;
      std::size_t pos = 0;
      while (true) {
        const auto comma = text.find(',', pos);
        v.push_back(parse_int(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      g = GroupElement::permutation(std::move(v));
      break;
    }
    case GroupKind::elementary_abelian_2: {
      std::vector<int> b;
      for (char c : text) {
        if (c != '0' && c != '1') throw InvalidElementError("bad bit vector '" + std::string(text) + "'");
        b.push_back(c - '0');
      }
      g = GroupElement::bits(std::move(b));
      break;
    }
    case GroupKind::cyclic:
      g = GroupElement::residue(parse_int(text));
      break;
  }
  require_member(spec, g);
  return g;
}

}  // namespace mdsg
