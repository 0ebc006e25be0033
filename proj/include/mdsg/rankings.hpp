#pragma once

// Full-ranking datasets, their permutations, and embeddings of observed data.
//
// File format: the first line lists item labels separated by commas; every
// later line lists 1-based item indices in rank order, optionally followed by
// ";count". Lines starting with '#' and blank lines are ignored.

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mdsg/errors.hpp"
#include "mdsg/group.hpp"
#include "mdsg/mds_dense.hpp"
#include "mdsg/mds_spectral.hpp"
#include "mdsg/metrics.hpp"

namespace mdsg {

struct RankingRecord {
  std::vector<int> ranking;  // ranking[p] = item index (1-based) at rank position p+1
  std::uint64_t count = 1;

  friend bool operator==(const RankingRecord&, const RankingRecord&) = default;
};

struct RankingDataset {
  std::vector<std::string> items;
  std::vector<RankingRecord> records;

  std::uint64_t total_count() const {
    std::uint64_t total = 0;
    for (const auto& r : records) total += r.count;
    return total;
  }

  friend bool operator==(const RankingDataset&, const RankingDataset&) = default;
};

struct PermutationSample {
  GroupElement permutation;
  std::uint64_t weight = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename Int>
bool parse_unsigned(std::string_view s, Int& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline RankingDataset parse_rankings(std::string_view text) {
  RankingDataset data;
  bool have_header = false;
  std::size_t line_no = 0;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      for (auto label : detail::split(line, ',')) {
        label = detail::trim(label);
        if (label.empty()) throw ParseError("empty item label in header", line_no);
        data.items.emplace_back(label);
      }
      have_header = true;
      continue;
    }

    RankingRecord record;
    std::string_view body = line;
    if (const auto semi = line.find(';'); semi != std::string_view::npos) {
      body = line.substr(0, semi);
      if (!detail::parse_unsigned(line.substr(semi + 1), record.count) || record.count == 0)
        throw ParseError("count after ';' must be a positive integer", line_no);
    }
    const auto fields = detail::split(body, ',');
    if (fields.size() != data.items.size())
      throw ParseError("row has " + std::to_string(fields.size()) + " entries, expected " +
                           std::to_string(data.items.size()),
                       line_no);
    std::vector<bool> seen(data.items.size(), false);
    for (auto field : fields) {
      int idx = 0;
      if (!detail::parse_unsigned(field, idx) || idx < 1 || idx > static_cast<int>(data.items.size()))
        throw ParseError("item index '" + std::string(detail::trim(field)) + "' out of range", line_no);
      if (seen[static_cast<std::size_t>(idx - 1)])
        throw ParseError("item " + std::to_string(idx) + " repeated; only full rankings are supported", line_no);
      seen[static_cast<std::size_t>(idx - 1)] = true;
      record.ranking.push_back(idx);
    }
    data.records.push_back(std::move(record));
  }
  if (!have_header) throw ParseError("missing item header", 0);
  return data;
}

inline std::string format_rankings(const RankingDataset& data) {
  std::ostringstream os;
  for (std::size_t i = 0; i < data.items.size(); ++i) os << (i ? "," : "") << data.items[i];
  os << '\n';
  for (const auto& r : data.records) {
    for (std::size_t i = 0; i < r.ranking.size(); ++i) os << (i ? "," : "") << r.ranking[i];
    if (r.count != 1) os << ';' << r.count;
    os << '\n';
  }
  return os.str();
}

/// g(i) = rank position of the item at position i of `reference`
/// (the identity order 1..n when `reference` is empty).
inline GroupElement ranking_to_permutation(const std::vector<int>& ranking, const std::vector<int>& reference = {}) {
  const std::size_t n = ranking.size();
  std::vector<int> position(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const int item = ranking[p];
    if (item < 1 || static_cast<std::size_t>(item) > n || position[static_cast<std::size_t>(item)] != 0)
      throw InvalidElementError("ranking is not a full permutation of the items");
    position[static_cast<std::size_t>(item)] = static_cast<int>(p) + 1;
  }
  if (!reference.empty() && reference.size() != n) throw InvalidElementError("reference order has the wrong length");
  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int item = reference.empty() ? static_cast<int>(i) + 1 : reference[i];
    if (item < 1 || static_cast<std::size_t>(item) > n) throw InvalidElementError("reference order item out of range");
    images[i] = position[static_cast<std::size_t>(item)];
  }
  return GroupElement::permutation(std::move(images));
}

/// Distinct permutations with summed counts, in lexicographic order.
inline std::vector<PermutationSample> aggregate(const RankingDataset& data) {
  std::map<GroupElement, std::uint64_t> counts;
  for (const auto& r : data.records) counts[ranking_to_permutation(r.ranking)] += r.count;
  std::vector<PermutationSample> out;
  out.reserve(counts.size());
  for (auto& [perm, weight] : counts) out.push_back({perm, weight});
  return out;
}

// ---------------------------------------------------------------------------

enum class EmbedMode { dense, standard };

inline constexpr int kDenseEmbedMaxItems = 7;

struct DatasetEmbedding {
  std::vector<PermutationSample> samples;
  EmbeddingResult embedding;  // row i belongs to samples[i]
};

/// Raw standard-block coordinates (one row of length n^2 per sample).
inline Eigen::MatrixXd standard_block_coordinates(const std::vector<PermutationSample>& samples, int n) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(n) * n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto c = standard_rep_coordinates(samples[i].permutation, n);
    x.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  }
  return x;
}

/// Dense mode embeds all of S_n and keeps the observed rows; standard mode maps
/// observed permutations into the standard block and reduces to `dims`
/// weighted principal axes.
inline DatasetEmbedding embed_dataset(const std::vector<PermutationSample>& samples, int n, int dims, EmbedMode mode) {
  if (dims < 1) throw std::invalid_argument("dims must be >= 1");
  if (samples.empty()) throw std::invalid_argument("no samples to embed");
  const auto spec = GroupSpec::symmetric(n);
  for (const auto& s : samples) require_member(spec, s.permutation);

  DatasetEmbedding out{samples, {}};
  if (mode == EmbedMode::dense) {
    if (n > kDenseEmbedMaxItems)
      throw TooLargeError("dense embedding supports at most " + std::to_string(kDenseEmbedMaxItems) + " items", kDenseEmbedMaxItems);
    const auto dec = dense_spectrum(spec, Metric::hamming_permutation(), kDefaultElementCap);
    const auto full = classical_embedding(dec, dims);
    out.embedding = full;
    out.embedding.coordinates.resize(static_cast<Eigen::Index>(samples.size()), full.coordinates.cols());
    for (std::size_t i = 0; i < samples.size(); ++i)
      out.embedding.coordinates.row(static_cast<Eigen::Index>(i)) =
          full.coordinates.row(static_cast<Eigen::Index>(element_index(spec, samples[i].permutation)));
    return out;
  }

  if (n < 4) throw std::invalid_argument("standard embedding requires n >= 4");
  Eigen::MatrixXd x = standard_block_coordinates(samples, n);
  Eigen::VectorXd w(x.rows());
  for (std::size_t i = 0; i < samples.size(); ++i) w(static_cast<Eigen::Index>(i)) = static_cast<double>(samples[i].weight);
  const double total = w.sum();
  const Eigen::RowVectorXd mean = (w.transpose() * x) / total;
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = (x.transpose() * w.asDiagonal() * x) / total;
  const auto axes = eigendecompose(MdsKernel{0.5 * (cov + cov.transpose()), true});

  const int kept = std::min<int>(dims, static_cast<int>(axes.size()));
  out.embedding.truncated = kept < dims;
  out.embedding.positive = kept;
  out.embedding.coordinates = x * axes.eigenvectors.leftCols(kept);
  for (int c = 0; c < kept; ++c) out.embedding.eigenvalues.push_back(axes.eigenvalues(c));
  return out;
}

// ---------------------------------------------------------------------------

/// Deterministic full rankings from a Mallows-type repeated insertion model
/// centered on the identity order. dispersion = 1 gives uniform rankings;
/// smaller values concentrate mass near the identity.
inline RankingDataset synthesize_rankings(int n_items, std::size_t n_rows, std::uint64_t seed, double dispersion = 1.0) {
  if (n_items < 2) throw std::invalid_argument("synthesize_rankings requires at least 2 items");
  if (!(dispersion > 0.0 && dispersion <= 1.0)) throw std::invalid_argument("dispersion must be in (0, 1]");
  std::mt19937_64 rng(seed);
  // Portable uniform draw in [0, 1); std distributions are implementation-defined.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  RankingDataset data;
  for (int i = 1; i <= n_items; ++i) data.items.push_back("item" + std::to_string(i));
  data.records.reserve(n_rows);
  std::vector<double> weight;
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<int> order;
    for (int item = 1; item <= n_items; ++item) {
      // Insert at position j (0-based, j <= item-1) with probability ~ dispersion^(item-1-j).
      weight.assign(static_cast<std::size_t>(item), 0.0);
      double sum = 0.0;
      for (int j = 0; j < item; ++j) sum += weight[static_cast<std::size_t>(j)] = std::pow(dispersion, item - 1 - j);
      double u = uniform() * sum;
      int slot = item - 1;
      for (int j = 0; j < item; ++j) {
        u -= weight[static_cast<std::size_t>(j)];
        if (u < 0) {
          slot = j;
          break;
        }
      }
      order.insert(order.begin() + slot, item);
    }
    data.records.push_back({std::move(order), 1});
  }
  return data;
}

}  // namespace mdsg
