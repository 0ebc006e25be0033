// mdsg: spectra, character tables, ranking embeddings and scatter plots.
//
// Exit codes: 0 success, 2 usage or parse error, 3 resource guard, 1 anything else.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mdsg/mdsg.hpp"

namespace {

using namespace mdsg;

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr std::size_t kChartableClassCap = 200;
constexpr std::uint64_t kDefaultSeed = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupOptions {
  std::string group;
  int n = 0;
  int k = 0;
  std::string metric;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--group", group, "sn | c2k | cyclic")->required()->check(CLI::IsMember({"sn", "c2k", "cyclic"}));
    cmd->add_option("--n", n, "degree of S_n or order of C_n");
    cmd->add_option("--k", k, "number of bits for C_2^k");
    cmd->add_option("--metric", metric, "hamming | arc (default: hamming for sn/c2k, arc for cyclic)")
        ->check(CLI::IsMember({"hamming", "arc"}));
  }

  GroupSpec spec() const {
    if (group == "c2k") {
      if (k < 1) throw UsageError("--group c2k needs --k >= 1");
      return GroupSpec::elementary_abelian_2(k);
    }
    if (n < 1) throw UsageError("--group " + group + " needs --n >= 1");
    return group == "sn" ? GroupSpec::symmetric(n) : GroupSpec::cyclic(n);
  }

  Metric metric_for(const GroupSpec& s) const {
    const std::string name = metric.empty() ? (s.kind() == GroupKind::cyclic ? "arc" : "hamming") : metric;
    if (name == "arc") {
      if (s.kind() != GroupKind::cyclic) throw UsageError("metric 'arc' is only defined on cyclic groups");
      return Metric::circular_arc();
    }
    if (s.kind() == GroupKind::cyclic) throw UsageError("metric 'hamming' is not defined on cyclic groups; use arc");
    return Metric::default_for(s.kind());
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_cap(const GroupSpec& spec, std::size_t cap) {
  if (spec.order() > cap)
    throw TooLargeError(spec.name() + " has order " + std::to_string(spec.order()) + ", above the dense oracle cap of " +
                            std::to_string(cap) + " (raise --cap)",
                        cap);
}

// ---------------------------------------------------------------------------

struct SpectrumOptions {
  GroupOptions g;
  bool closed_form = false;
  bool verify = false;
  std::size_t cap = 720;
  std::string out;
};

void run_spectrum(const SpectrumOptions& o) {
  const auto spec = o.g.spec();
  const auto metric = o.g.metric_for(spec);
  if (o.closed_form && metric.kind() == MetricKind::circular_arc)
    throw UsageError("--closed-form covers Hamming distance on sn and c2k only");
  const auto summary = !o.closed_form                          ? spectrum_via_characters(spec, metric)
                       : spec.kind() == GroupKind::symmetric ? closed_form_sn(spec.size())
                                                             : closed_form_c2k(spec.size());
  auto doc = spectrum_to_json(summary);
  doc["method"] = o.closed_form ? "closed-form" : "characters";
  if (o.verify) {
    require_cap(spec, o.cap);
    const auto cmp = compare_with_oracle(summary, dense_spectrum(spec, metric, o.cap));
    doc["verification"] = {{"oracle_size", cmp.oracle_size},
                           {"max_abs_deviation", cmp.max_abs_deviation},
                           {"max_relative_deviation", cmp.max_relative_deviation},
                           {"multiplicities_match", cmp.multiplicities_match}};
  }
  write_output(o.out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct ChartableOptions {
  GroupOptions g;
  std::string format = "text";
  std::string out;
};

std::string class_heading(const GroupSpec& spec, const ConjugacyClass& cls) {
  const std::string rep = spec.kind() == GroupKind::symmetric ? to_cycle_notation(cls.representative) : to_text(cls.representative);
  return rep + " [" + std::to_string(cls.size) + "]";
}

std::string cell_text(const GroupSpec& spec, const CharacterTable& table, std::size_t row, std::size_t col) {
  if (spec.kind() == GroupKind::cyclic) {
    // chi_a(m) = w^(a m mod n), w = exp(2 pi i / n)
    const long long a = std::get<Frequency>(table.labels[row]).value;
    const long long m = table.classes[col].representative.value();
    const long long e = (a * m) % spec.size();
    return e == 0 ? "1" : "w^" + std::to_string(e);
  }
  return table.entries[row][col].to_string();
}

void run_chartable(const ChartableOptions& o) {
  const auto spec = o.g.spec();
  if (!o.g.metric.empty()) throw UsageError("chartable does not take --metric");
  const auto table = character_table(spec, kChartableClassCap);

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"irrep"};
  for (const auto& cls : table.classes) header.push_back(class_heading(spec, cls));
  grid.push_back(header);
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    std::vector<std::string> line{label_to_string(table.labels[r])};
    for (std::size_t c = 0; c < table.classes.size(); ++c) line.push_back(cell_text(spec, table, r, c));
    grid.push_back(std::move(line));
  }

  std::ostringstream os;
  if (o.format == "csv") {
    for (const auto& line : grid) {
      for (std::size_t c = 0; c < line.size(); ++c) os << (c ? "," : "") << detail::csv_quote(line[c]);
      os << '\n';
    }
  } else {
    if (spec.kind() == GroupKind::cyclic) os << "# w = exp(2*pi*i/" << spec.size() << ")\n";
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : grid)
      for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    for (const auto& line : grid) {
      std::string row;
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c) row += "  ";
        // Label column left-aligned, values right-aligned.
        const std::string pad(width[c] - line[c].size(), ' ');
        row += c == 0 ? line[c] + pad : pad + line[c];
      }
      while (!row.empty() && row.back() == ' ') row.pop_back();
      os << row << '\n';
    }
  }
  write_output(o.out, os.str());
}

// ---------------------------------------------------------------------------

struct EmbedOptions {
  std::string input;
  int dims = 3;
  std::string mode = "dense";
  std::string out;
};

void run_embed(const EmbedOptions& o) {
  const auto data = parse_rankings(read_input(o.input));
  if (data.records.empty()) throw UsageError("'" + o.input + "' contains no rankings");
  const auto samples = aggregate(data);
  const auto emb = embed_dataset(samples, static_cast<int>(data.items.size()), o.dims,
                                 o.mode == "dense" ? EmbedMode::dense : EmbedMode::standard);
  if (emb.embedding.truncated)
    std::cerr << "warning: only " << emb.embedding.dims() << " of " << o.dims << " requested dimensions are available\n";
  write_output(o.out, embedding_to_csv(emb));
}

// ---------------------------------------------------------------------------

struct PlotCliOptions {
  std::string input;
  std::string out;
  int color_col = 3;
  bool color_given = false;
};

void run_plot(const PlotCliOptions& o) {
  const auto table = parse_embedding_csv(read_input(o.input));
  PlotOptions opt;
  opt.color_column = o.color_col;
  opt.color_explicit = o.color_given;
  write_output(o.out, render_scatter_svg(table, opt));
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  GroupOptions g;
  std::size_t cap = 720;
  double tolerance = 1e-8;
};

int run_verify(const VerifyOptions& o) {
  const auto spec = o.g.spec();
  const auto metric = o.g.metric_for(spec);
  require_cap(spec, o.cap);

  const auto summary = spectrum_via_characters(spec, metric);
  const auto dm = build_distance_matrix(spec, metric, o.cap);
  const auto kernel = double_center(dm);
  const auto dec = eigendecompose(kernel);
  bool all = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    all = all && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << std::left << std::setw(16) << name << detail << '\n';
  };
  auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << v;
    return s.str();
  };

  std::cout << spec.name() << " / " << metric.name() << " (order " << spec.order() << ")\n";

  const auto cmp = compare_with_oracle(summary, dec);
  report("spectrum", cmp.max_relative_deviation <= o.tolerance && cmp.multiplicities_match,
         "max relative deviation " + num(cmp.max_relative_deviation) +
             (cmp.multiplicities_match ? ", multiplicities match" : ", multiplicities differ"));

  const auto lhs = summary.trace();
  const auto rhs = Cyclotomic(centered_trace(dm));
  report("trace", lhs == rhs, "sum lambda*mult = " + lhs.to_string() + ", sum d^2/(2|G|) = " + rhs.to_string());

  const auto emb = pseudo_embedding(dec);
  double worst = 0.0;
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = i + 1; j < dm.size(); ++j) {
      const double d = static_cast<double>(dm(i, j));
      worst = std::max(worst, std::abs(pseudo_distance_sq(emb, static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - d * d));
    }
  report("reconstruction", worst <= o.tolerance,
         "signature (" + std::to_string(emb.positive) + "," + std::to_string(emb.negative) + "), max |d^2 error| " + num(worst));

  const auto n = kernel.matrix.rows();
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
  std::vector<IsotypicProjector> projectors;
  double idempotent = 0.0, eigen = 0.0, trace = 0.0, cross = 0.0;
  for (const auto& label : real_isotypic_labels(spec)) {
    auto p = isotypic_projector(spec, label, o.cap);
    idempotent = std::max(idempotent, (p.matrix * p.matrix - p.matrix).cwiseAbs().maxCoeff());
    trace = std::max(trace, std::abs(p.matrix.trace() - static_cast<double>(p.rank)));
    if (!is_trivial(label)) {
      const auto* entry = summary.entry_for(label);
      const double lambda = entry ? entry->eigenvalue.real_value() : 0.0;
      eigen = std::max(eigen, (p.matrix * kernel.matrix - lambda * p.matrix).cwiseAbs().maxCoeff());
    }
    total += p.matrix;
    projectors.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < projectors.size(); ++i)
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      cross = std::max(cross, (projectors[i].matrix * projectors[j].matrix).cwiseAbs().maxCoeff());
  const double completeness = (total - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, dec.max_abs_eigenvalue());
  const bool projectors_ok = idempotent <= o.tolerance && trace <= o.tolerance && cross <= o.tolerance &&
                             completeness <= o.tolerance && eigen <= o.tolerance * scale;
  report("projectors", projectors_ok,
         std::to_string(projectors.size()) + " isotypic projectors; P^2-P " + num(idempotent) + ", PiPj " + num(cross) +
             ", sum-I " + num(completeness) + ", PM-lambdaP " + num(eigen));

  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct SynthOptions {
  int items = 5;
  std::size_t rows = 5738;
  std::uint64_t seed = kDefaultSeed;
  double dispersion = 1.0;
  std::string out;
};

void run_synthesize(const SynthOptions& o) {
  std::cerr << "seed: " << o.seed << '\n';
  write_output(o.out, format_rankings(synthesize_rankings(o.items, o.rows, o.seed, o.dispersion)));
}

struct DistancesOptions {
  GroupOptions g;
  std::size_t cap = 720;
  std::string out;
};

void run_distances(const DistancesOptions& o) {
  const auto spec = o.g.spec();
  const auto metric = o.g.metric_for(spec);
  require_cap(spec, o.cap);
  write_output(o.out, distance_matrix_csv(build_distance_matrix(spec, metric, o.cap)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral MDS on finite groups: spectra, character tables, ranking embeddings, scatter plots"};
  app.require_subcommand(1);

  SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "predicted MDS spectrum as JSON");
  spectrum.g.add_to(spectrum_cmd);
  spectrum_cmd->add_flag("--closed-form", spectrum.closed_form, "use the closed-form Hamming tables (sn with n >= 4, c2k)");
  spectrum_cmd->add_flag("--verify", spectrum.verify, "compare with the dense eigensolver");
  spectrum_cmd->add_option("--cap", spectrum.cap, "largest group order for --verify")->capture_default_str();
  spectrum_cmd->add_option("--out", spectrum.out, "output path (default stdout)");

  ChartableOptions chartable;
  auto* chartable_cmd = app.add_subcommand("chartable", "exact character table (at most 200 classes)");
  chartable.g.add_to(chartable_cmd);
  chartable_cmd->add_option("--format", chartable.format, "text | csv")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  chartable_cmd->add_option("--out", chartable.out, "output path (default stdout)");

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "embed a ranking file; writes id,label,weight,x1.. CSV");
  embed_cmd->add_option("--input", embed.input, "ranking file")->required();
  embed_cmd->add_option("--dims", embed.dims, "number of coordinates (>= 1)")->check(CLI::Range(1, 1 << 20))->capture_default_str();
  embed_cmd->add_option("--mode", embed.mode, "dense (n <= 7) | standard (n >= 4)")
      ->check(CLI::IsMember({"dense", "standard"}))
      ->capture_default_str();
  embed_cmd->add_option("--out", embed.out, "output path (default stdout)");

  PlotCliOptions plot;
  auto* plot_cmd = app.add_subcommand(
      "plot",
      "SVG scatter of an embedding CSV. x and y are coordinates 1 and 2, each scaled to the data bounding box "
      "(y grows upward); radius is proportional to sqrt(weight); fill runs linearly from #2c7bb6 (low) to #d7191c "
      "(high) over the color coordinate");
  plot_cmd->add_option("--input", plot.input, "embedding CSV")->required();
  plot_cmd->add_option("--out", plot.out, "output path (default stdout)");
  auto* color_opt = plot_cmd->add_option("--color-col", plot.color_col, "coordinate used for color")->capture_default_str();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check the character-theory spectrum against dense linear algebra");
  verify.g.add_to(verify_cmd);
  verify_cmd->add_option("--cap", verify.cap, "largest group order")->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synthesize", "deterministic synthetic ranking file");
  synth_cmd->add_option("--items", synth.items, "number of items (>= 2)")->capture_default_str();
  synth_cmd->add_option("--rows", synth.rows, "number of rankings")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "random seed")->capture_default_str();
  synth_cmd->add_option("--dispersion", synth.dispersion, "in (0, 1]; 1 is uniform")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "output path (default stdout)");

  DistancesOptions distances;
  auto* distances_cmd = app.add_subcommand("distances", "distance matrix CSV");
  distances.g.add_to(distances_cmd);
  distances_cmd->add_option("--cap", distances.cap, "largest group order")->capture_default_str();
  distances_cmd->add_option("--out", distances.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*spectrum_cmd) run_spectrum(spectrum);
    if (*chartable_cmd) run_chartable(chartable);
    if (*embed_cmd) run_embed(embed);
    if (*plot_cmd) {
      plot.color_given = color_opt->count() > 0;
      run_plot(plot);
    }
    if (*verify_cmd) return run_verify(verify);
    if (*synth_cmd) run_synthesize(synth);
    if (*distances_cmd) run_distances(distances);
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // Covers mismatched labels/metrics, unsupported closed forms and bad parameters.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
