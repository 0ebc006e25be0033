#pragma once

// Exact character theory of S_n, C_2^k and C_n.
//
// Class functions are vectors of exact scalars aligned with
// conjugacy_classes(group). S_n and C_2^k values are rational; C_n values
// live in Q(w), w = exp(2*pi*i/n).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mdsg/cyclotomic.hpp"
#include "mdsg/errors.hpp"
#include "mdsg/group.hpp"
#include "mdsg/rational.hpp"

namespace mdsg {

/// Irreducible of C_2^k: the sorted 1-based positions s with chi(g) = (-1)^(sum_s g_s).
struct Subset {
  std::vector<int> indices;
  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;
};

/// Irreducible of C_n: chi(m) = w^(frequency * m).
struct Frequency {
  int value = 0;
  friend bool operator==(const Frequency&, const Frequency&) = default;
  friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

using IrreducibleLabel = std::variant<Partition, Subset, Frequency>;

inline std::string label_to_string(const IrreducibleLabel& label) {
  if (const auto* p = std::get_if<Partition>(&label)) return p->to_string();
  if (const auto* s = std::get_if<Subset>(&label)) {
    std::string out = "{";
    for (std::size_t i = 0; i < s->indices.size(); ++i) out += (i ? "," : "") + std::to_string(s->indices[i]);
    return out + "}";
  }
  return "f" + std::to_string(std::get<Frequency>(label).value);
}

inline bool is_trivial(const IrreducibleLabel& label) {
  if (const auto* p = std::get_if<Partition>(&label)) return p->length() == 1;
  if (const auto* s = std::get_if<Subset>(&label)) return s->indices.empty();
  return std::get<Frequency>(label).value == 0;
}

/// Row index of a subset in the Sylvester-Hadamard matrix H_{2^k}: position s is bit (k - s).
inline std::uint64_t subset_mask(const Subset& subset, int k) {
  std::uint64_t mask = 0;
  for (int s : subset.indices) mask |= std::uint64_t{1} << (k - s);
  return mask;
}

inline void require_label(const GroupSpec& spec, const IrreducibleLabel& label) {
  bool ok = false;
  switch (spec.kind()) {
    case GroupKind::symmetric:
      if (const auto* p = std::get_if<Partition>(&label)) ok = p->n() == spec.size();
      break;
    case GroupKind::elementary_abelian_2:
      if (const auto* s = std::get_if<Subset>(&label)) {
        ok = std::is_sorted(s->indices.begin(), s->indices.end()) &&
             std::adjacent_find(s->indices.begin(), s->indices.end()) == s->indices.end() &&
             std::all_of(s->indices.begin(), s->indices.end(), [&](int i) { return i >= 1 && i <= spec.size(); });
      }
      break;
    case GroupKind::cyclic:
      if (const auto* f = std::get_if<Frequency>(&label)) ok = f->value >= 0 && f->value < spec.size();
      break;
  }
  if (!ok) throw MismatchError("irreducible label " + label_to_string(label) + " does not belong to " + spec.name());
}

/// Partitions reverse-lexicographic; subsets by (size, binary value); frequencies ascending.
inline std::vector<IrreducibleLabel> irreducible_labels(const GroupSpec& spec, std::size_t cap = kDefaultElementCap) {
  std::vector<IrreducibleLabel> out;
  switch (spec.kind()) {
    case GroupKind::symmetric:
      for (auto& p : partitions_of(spec.size())) out.emplace_back(p);
      break;
    case GroupKind::elementary_abelian_2: {
      require_enumerable(spec, cap);
      const int k = spec.size();
      std::vector<std::uint64_t> masks(spec.order());
      for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
      std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) < std::popcount(b);
      });
      for (std::uint64_t m : masks) {
        Subset s;
        for (int pos = 1; pos <= k; ++pos)
          if ((m >> (k - pos)) & 1U) s.indices.push_back(pos);
        out.emplace_back(std::move(s));
      }
      break;
    }
    case GroupKind::cyclic:
      for (int a = 0; a < spec.size(); ++a) out.emplace_back(Frequency{a});
      break;
  }
  return out;
}

/// Field order of the character values: n for C_n, 1 otherwise.
inline int character_field_order(const GroupSpec& spec) {
  return spec.kind() == GroupKind::cyclic ? spec.size() : 1;
}

inline std::vector<std::uint64_t> class_sizes(const GroupSpec& spec, std::size_t cap = kDefaultElementCap) {
  if (spec.kind() == GroupKind::symmetric) {
    auto parts = partitions_of(spec.size());
    std::vector<std::uint64_t> sizes;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) sizes.push_back(class_size(*it));
    return sizes;
  }
  require_enumerable(spec, cap);
  return std::vector<std::uint64_t>(spec.order(), 1);
}

// ---------------------------------------------------------------------------
// Symmetric group characters (Murnaghan-Nakayama)

namespace detail {

using MnMemo = std::map<std::pair<std::vector<int>, std::vector<int>>, long long>;

// chi^shape evaluated on a permutation of cycle type `cycles` (any order of parts).
inline long long murnaghan_nakayama(const std::vector<int>& shape, const std::vector<int>& cycles,
                                    std::size_t next, MnMemo& memo) {
  if (next == cycles.size()) return shape.empty() ? 1 : 0;
  std::vector<int> rest_key(cycles.begin() + static_cast<std::ptrdiff_t>(next), cycles.end());
  auto key = std::make_pair(shape, rest_key);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  // Beta numbers: distinct first-column hook lengths, decreasing.
  const int len = static_cast<int>(shape.size());
  std::vector<int> beta(shape.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = shape[static_cast<std::size_t>(i)] + (len - 1 - i);

  const int r = cycles[next];
  long long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int target = beta[i] - r;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    // Leg length of the removed rim hook = beads strictly between target and beta[i].
    int between = 0;
    for (int b : beta)
      if (b > target && b < beta[i]) ++between;
    std::vector<int> moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> smaller;
    for (int j = 0; j < len; ++j) {
      const int part = moved[static_cast<std::size_t>(j)] - (len - 1 - j);
      if (part > 0) smaller.push_back(part);
    }
    const long long sub = murnaghan_nakayama(smaller, cycles, next + 1, memo);
    total += (between % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace detail

/// Irreducible character of S_n indexed by `shape` on the class of cycle type `cycle_type`.
inline long long symmetric_character(const Partition& shape, const Partition& cycle_type) {
  if (shape.n() != cycle_type.n()) throw MismatchError("partition sizes differ");
  detail::MnMemo memo;
  return detail::murnaghan_nakayama(shape.parts(), cycle_type.parts(), 0, memo);
}

/// Hook length formula; 1 for abelian labels.
inline std::uint64_t dimension(const GroupSpec& spec, const IrreducibleLabel& label) {
  require_label(spec, label);
  const auto* shape = std::get_if<Partition>(&label);
  if (!shape) return 1;
  const auto& parts = shape->parts();
  std::uint64_t hooks = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      int below = 0;
      for (std::size_t r = i + 1; r < parts.size() && parts[r] > j; ++r) ++below;
      hooks *= static_cast<std::uint64_t>(parts[i] - j - 1 + below + 1);
    }
  }
  return spec.order() / hooks;
}

inline Cyclotomic character_value(const GroupSpec& spec, const IrreducibleLabel& label, const ConjugacyClass& cls) {
  require_label(spec, label);
  require_member(spec, cls.representative);
  switch (spec.kind()) {
    case GroupKind::symmetric:
      return Cyclotomic(symmetric_character(std::get<Partition>(label), cycle_type(cls.representative)));
    case GroupKind::elementary_abelian_2: {
      int parity = 0;
      for (int s : std::get<Subset>(label).indices) parity ^= cls.representative[static_cast<std::size_t>(s - 1)];
      return Cyclotomic(parity ? -1 : 1);
    }
    case GroupKind::cyclic:
      return Cyclotomic::root_of_unity(
          spec.size(), static_cast<long long>(std::get<Frequency>(label).value) * cls.representative.value());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Class functions and the character table

struct ClassFunction {
  GroupSpec group;
  std::vector<Cyclotomic> values;  // aligned with conjugacy_classes(group)
};

inline constexpr std::size_t kDefaultTableClassCap = 4096;

struct CharacterTable {
  GroupSpec group;
  std::vector<IrreducibleLabel> labels;
  std::vector<ConjugacyClass> classes;
  std::vector<std::vector<Cyclotomic>> entries;  // entries[row][column]

  ClassFunction row(std::size_t i) const { return {group, entries.at(i)}; }

  std::size_t row_of(const IrreducibleLabel& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw MismatchError("label " + label_to_string(label) + " not in table");
    return static_cast<std::size_t>(it - labels.begin());
  }
};

inline CharacterTable character_table(const GroupSpec& spec, std::size_t class_cap = kDefaultTableClassCap) {
  const std::uint64_t count = class_count(spec);
  if (count > class_cap)
    throw TooLargeError(spec.name() + " has " + std::to_string(count) + " conjugacy classes, above the cap of " +
                            std::to_string(class_cap),
                        class_cap);
  CharacterTable table{spec, irreducible_labels(spec), conjugacy_classes(spec), {}};
  table.entries.assign(table.labels.size(), std::vector<Cyclotomic>(table.classes.size()));
  detail::MnMemo memo;
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
      if (spec.kind() == GroupKind::symmetric) {
        const auto& shape = std::get<Partition>(table.labels[r]);
        const auto& cycles = std::get<Partition>(table.classes[c].label);
        table.entries[r][c] = Cyclotomic(detail::murnaghan_nakayama(shape.parts(), cycles.parts(), 0, memo));
      } else {
        table.entries[r][c] = character_value(spec, table.labels[r], table.classes[c]);
      }
    }
  }
  return table;
}

/// <f1, f2> = (1/|G|) sum_classes |C| f1(C) conj(f2(C)).
inline Cyclotomic inner_product(const ClassFunction& f1, const ClassFunction& f2) {
  if (!(f1.group == f2.group)) throw MismatchError("class functions live on different groups");
  if (f1.values.size() != f2.values.size()) throw MismatchError("class functions have different class counts");
  const auto sizes = class_sizes(f1.group);
  const Rational order(static_cast<Rational::int_type>(f1.group.order()));

  bool rational = true;
  for (std::size_t c = 0; c < sizes.size() && rational; ++c)
    rational = f1.values[c].order() == 1 && f2.values[c].order() == 1;
  if (rational) {
    Rational sum(0);
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      const Rational& a = f1.values[c].coefficients()[0];
      const Rational& b = f2.values[c].coefficients()[0];
      if (!a.is_zero() && !b.is_zero()) sum += Rational(static_cast<Rational::int_type>(sizes[c])) * a * b;
    }
    return Cyclotomic(sum / order);
  }
  Cyclotomic sum(0);
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (f1.values[c].is_zero() || f2.values[c].is_zero()) continue;
    sum += Cyclotomic(Rational(static_cast<Rational::int_type>(sizes[c]))) * f1.values[c] * f2.values[c].conj();
  }
  return sum / order;
}

struct DecompositionResult {
  GroupSpec group;
  std::vector<std::pair<IrreducibleLabel, Cyclotomic>> coefficients;  // in irreducible_labels order

  Cyclotomic coefficient(const IrreducibleLabel& label) const {
    for (const auto& [l, c] : coefficients)
      if (l == label) return c;
    throw MismatchError("label " + label_to_string(label) + " not in decomposition");
  }
};

/// sigma_i = <f, chi_i> for every irreducible.
inline DecompositionResult decompose_class_function(const ClassFunction& f, const CharacterTable& table) {
  if (!(f.group == table.group)) throw MismatchError("class function and table live on different groups");
  DecompositionResult result{f.group, {}};
  for (std::size_t r = 0; r < table.labels.size(); ++r)
    result.coefficients.emplace_back(table.labels[r], inner_product(f, table.row(r)));
  return result;
}

inline DecompositionResult decompose_class_function(const ClassFunction& f) {
  return decompose_class_function(f, character_table(f.group));
}

/// sum_i sigma_i chi_i
inline ClassFunction reconstruct(const DecompositionResult& dec, const CharacterTable& table) {
  ClassFunction f{dec.group, std::vector<Cyclotomic>(table.classes.size(), Cyclotomic(0))};
  for (const auto& [label, sigma] : dec.coefficients) {
    if (sigma.is_zero()) continue;
    const auto& row = table.entries[table.row_of(label)];
    for (std::size_t c = 0; c < row.size(); ++c) f.values[c] += sigma * row[c];
  }
  return f;
}

/// Decomposes the pointwise square chi_label^2 of an S_n character into irreducibles.
inline DecompositionResult tensor_square_decomposition(const GroupSpec& spec, const IrreducibleLabel& label) {
  if (spec.kind() != GroupKind::symmetric) throw MismatchError("tensor_square_decomposition is defined for S_n");
  require_label(spec, label);
  const auto table = character_table(spec);
  const auto& row = table.entries[table.row_of(label)];
  ClassFunction square{spec, {}};
  for (const auto& v : row) square.values.push_back(v * v);
  return decompose_class_function(square, table);
}

// ---------------------------------------------------------------------------

/// Unnormalized Walsh-Hadamard transform in place: out[s] = sum_x in[x] (-1)^popcount(s & x).
/// Indices use the binary element order, so out[subset_mask(S)] = 2^k <f, chi_S>.
inline void walsh_hadamard_transform(std::vector<Rational>& values) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("Walsh-Hadamard length must be a power of two");
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const Rational a = values[i];
        const Rational b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

}  // namespace mdsg
