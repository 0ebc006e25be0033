#pragma once

// Serialization: spectrum JSON, embedding CSV, SVG scatter plots.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mdsg/errors.hpp"
#include "mdsg/mds_dense.hpp"
#include "mdsg/mds_spectral.hpp"
#include "mdsg/rankings.hpp"

namespace mdsg {

inline std::string group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::symmetric: return "symmetric";
    case GroupKind::elementary_abelian_2: return "elementary-abelian-2";
    case GroupKind::cyclic: return "cyclic";
  }
  return {};
}

/// Exact values are strings: "p/q" (or "p") when rational, otherwise a
/// polynomial in w = exp(2*pi*i/n) with "field_order" n recorded alongside.
inline nlohmann::ordered_json spectrum_to_json(const SpectralSummary& summary) {
  nlohmann::ordered_json doc;
  doc["group"] = summary.group.name();
  doc["group_kind"] = group_kind_name(summary.group.kind());
  doc["group_size"] = summary.group.size();
  doc["order"] = summary.group.order();
  doc["metric"] = summary.metric;
  doc["field_order"] = character_field_order(summary.group);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : summary.entries) {
    nlohmann::ordered_json item;
    item["eigenvalue"] = e.eigenvalue.to_string();
    item["value"] = e.eigenvalue.real_value();
    item["multiplicity"] = e.multiplicity;
    auto labels = nlohmann::ordered_json::array();
    for (const auto& l : e.labels) labels.push_back(label_to_string(l));
    item["labels"] = std::move(labels);
    item["sign"] = to_string(e.sign);
    entries.push_back(std::move(item));
  }
  doc["entries"] = std::move(entries);
  doc["rank"] = summary.rank();
  doc["trivial_discarded"] = true;
  doc["trivial_eigenvalue"] = summary.trivial_eigenvalue.to_string();
  return doc;
}

inline nlohmann::ordered_json dense_spectrum_to_json(const SpectralDecomposition& dec) {
  nlohmann::ordered_json doc;
  doc["eigenvalues"] = std::vector<double>(dec.eigenvalues.data(), dec.eigenvalues.data() + dec.eigenvalues.size());
  doc["zero_threshold"] = zero_threshold(dec);
  return doc;
}

// ---------------------------------------------------------------------------
// Embedding CSV: id,label,weight,x1(+),x2(-),...

namespace detail {

inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> parse_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace detail

inline std::string embedding_to_csv(const DatasetEmbedding& emb) {
  std::ostringstream os;
  os << "id,label,weight";
  for (int c = 0; c < emb.embedding.dims(); ++c)
    os << ",x" << (c + 1) << (emb.embedding.eigenvalues[static_cast<std::size_t>(c)] > 0 ? "(+)" : "(-)");
  os << '\n';
  for (std::size_t i = 0; i < emb.samples.size(); ++i) {
    os << (i + 1) << ',' << detail::csv_quote(to_text(emb.samples[i].permutation)) << ',' << emb.samples[i].weight;
    for (int c = 0; c < emb.embedding.dims(); ++c)
      os << ',' << detail::format_double(emb.embedding.coordinates(static_cast<Eigen::Index>(i), c));
    os << '\n';
  }
  return os.str();
}

struct EmbeddingTable {
  std::vector<std::string> column_names;  // coordinate columns only
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<std::vector<double>> coordinates;  // per row
};

inline EmbeddingTable parse_embedding_csv(std::string_view text) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t width = 0;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty()) continue;
    auto fields = detail::parse_csv_line(line, line_no);
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "id" || fields[1] != "label" || fields[2] != "weight")
        throw ParseError("embedding CSV header must start with id,label,weight", line_no);
      table.column_names.assign(fields.begin() + 3, fields.end());
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) throw ParseError("row width does not match header", line_no);
    table.labels.push_back(fields[1]);
    double weight = 0.0;
    try {
      weight = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + fields[2] + "'", line_no);
    }
    if (!(weight > 0.0)) throw ParseError("weight must be positive", line_no);
    table.weights.push_back(weight);
    std::vector<double> coords;
    for (std::size_t c = 3; c < fields.size(); ++c) {
      try {
        coords.push_back(std::stod(fields[c]));
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + fields[c] + "'", line_no);
      }
    }
    table.coordinates.push_back(std::move(coords));
  }
  if (!have_header) throw ParseError("empty embedding CSV", 0);
  return table;
}

// ---------------------------------------------------------------------------
// SVG scatter plot

struct PlotOptions {
  int color_column = 3;       // 1-based coordinate index used for fill color
  bool color_explicit = false;  // error instead of falling back when the column is missing
  int width = 640;
  int height = 640;
  int margin = 48;
  double max_radius = 14.0;
};

/// Ramp endpoints: low values #2c7bb6, high values #d7191c, linear in RGB.
inline std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0x2c, 0xd7), mix(0x7b, 0x19), mix(0xb6, 0x1c));
  return buf;
}

/// Coordinates 1 and 2 scaled to the data bounding box; radius ~ sqrt(weight)
/// so that area ~ weight; color from the chosen coordinate.
inline std::string render_scatter_svg(const EmbeddingTable& table, const PlotOptions& opt = {}) {
  if (table.column_names.size() < 2) throw ParseError("plot needs at least two coordinate columns", 0);
  const std::size_t rows = table.coordinates.size();
  const bool has_color = opt.color_column >= 1 && static_cast<std::size_t>(opt.color_column) <= table.column_names.size();
  if (!has_color && opt.color_explicit)
    throw ParseError("color column " + std::to_string(opt.color_column) + " not present", 0);

  auto range = [&](std::size_t col) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& r : table.coordinates) {
      lo = std::min(lo, r[col]);
      hi = std::max(hi, r[col]);
    }
    return std::pair{lo, hi};
  };
  auto scale = [](double v, std::pair<double, double> r, double a, double b) {
    const double span = r.second - r.first;
    if (!(span > 1e-12)) return 0.5 * (a + b);
    return a + (v - r.first) / span * (b - a);
  };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };

  const auto xr = range(0);
  const auto yr = range(1);
  const auto cr = has_color ? range(static_cast<std::size_t>(opt.color_column - 1)) : std::pair{0.0, 0.0};
  const double w_max = rows ? *std::max_element(table.weights.begin(), table.weights.end()) : 1.0;

  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return table.weights[a] > table.weights[b]; });

  const double inner = opt.max_radius;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height << "\" fill=\"#ffffff\"/>\n"
     << "<text x=\"" << opt.margin << "\" y=\"" << opt.margin / 2 << "\" font-family=\"sans-serif\" font-size=\"12\">"
     << "x: " << table.column_names[0] << ", y: " << table.column_names[1];
  if (has_color) os << ", color: " << table.column_names[static_cast<std::size_t>(opt.color_column - 1)];
  os << "</text>\n<g stroke=\"#333333\" stroke-width=\"0.5\" fill-opacity=\"0.8\">\n";
  for (std::size_t i : order) {
    const double cx = scale(table.coordinates[i][0], xr, opt.margin + inner, opt.width - opt.margin - inner);
    const double cy = scale(table.coordinates[i][1], yr, opt.height - opt.margin - inner, opt.margin + inner);
    const double r = opt.max_radius * std::sqrt(table.weights[i] / w_max);
    const double t = has_color ? scale(table.coordinates[i][static_cast<std::size_t>(opt.color_column - 1)], cr, 0.0, 1.0) : 0.5;
    std::string label;
    for (char c : table.labels[i]) label += (c == '<' || c == '>' || c == '&') ? ' ' : c;
    os << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r) << "\" fill=\"" << ramp_color(t)
       << "\"><title>" << label << "</title></circle>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mdsg
