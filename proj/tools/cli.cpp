#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "bench.hpp"
#include "gcdd/gcdd.hpp"
#include "svg_plot.hpp"

namespace gcdd::cli {
namespace {

namespace fs = std::filesystem;

// Outputs are rendered in memory and written at the end, so a failed run
// never leaves a truncated file. The target is checked up front so that an
// unwritable path is reported before any expensive work.
void check_writable(const std::string &path) {
  if (path.empty())
    throw usage_error("--out is required");
  const fs::path p(path);
  std::error_code ec;
  if (fs::is_directory(p, ec))
    throw usage_error("cannot write '" + path + "': is a directory");
  if (fs::exists(p, ec)) {
    if (access(path.c_str(), W_OK) != 0)
      throw usage_error("cannot write '" + path + "'");
    return;
  }
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  if (!fs::is_directory(dir, ec) || access(dir.c_str(), W_OK) != 0)
    throw usage_error("cannot write '" + path + "': directory '" + dir.string() +
                      "' is missing or not writable");
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << content) || !f.flush())
    throw usage_error("cannot write '" + path + "'");
}

std::ifstream open_input(const std::string &path, const char *what) {
  std::ifstream in(path);
  if (!in)
    throw data_error(std::string("cannot open ") + what + " '" + path + "'");
  return in;
}

std::string with_suffix(const std::string &path, const std::string &suffix) {
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

std::vector<std::string> symbols(const std::vector<ChartClass> &labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (ChartClass c : labels)
    out.emplace_back(class_symbol(c));
  return out;
}

std::vector<ChartClass> read_labels_file(const std::string &path) {
  auto in = open_input(path, "labels file");
  return read_labels(in);
}

/// Series for distmat. Labels do not enter a matrix, so any consistent
/// row layout is accepted when no labels file is given.
std::vector<LabeledSeries> read_series(const std::string &input, const std::string &labels) {
  if (!labels.empty())
    return read_dataset(input, labels).series;
  auto in = open_input(input, "data file");
  std::vector<LabeledSeries> out;
  for (auto &row : parse_rows(in))
    out.push_back({std::move(row), ChartClass::kNormal});
  return out;
}

DissimilarityMatrix read_matrix_file(const std::string &path) {
  auto in = open_input(path, "matrix file");
  return read_matrix_csv(in);
}

std::string fmt(const char *spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// --- options --------------------------------------------------------------

struct GenerateArgs {
  std::uint64_t seed = 7;
  std::size_t per_class = 100;
  std::size_t length = 60;
  std::string out;
  std::string labels; // default: <out-stem>.labels.csv
};

struct EncodingArgs {
  std::string encoding = "quantize8";
  std::string range = "global";
  unsigned levels = kPipelineLevels;

  EncodingScheme scheme(const std::vector<LabeledSeries> &data) const {
    EncodingScheme s;
    s.mode = parse_encoding(encoding);
    s.levels = levels;
    s.range = parse_range(range);
    if (s.range == RangePolicy::kGlobal)
      s = with_global_range(s, data);
    return s;
  }
};

struct DistmatArgs {
  std::string input, labels, out;
  std::string measure = "gcdd-entropy";
  std::vector<std::string> phi;
  EncodingArgs encoding;
  std::size_t max_lag = 10;
  double cort_k = 2.0;
  unsigned workers = 1;
};

struct MdsArgs {
  std::string input, labels, out;
  std::size_t dims = 2;
};

struct ClusterArgs {
  std::string input, labels, out, report;
  std::size_t k = 6;
  std::string method = "pam";
};

struct PlotArgs {
  std::string input, labels, out, title;
};

struct BenchArgs {
  std::string input, labels, out;
  std::vector<std::string> measures;
  std::uint64_t seed = 7;
  std::size_t reps = 5;
  std::size_t scale_per_class = 20;
  std::vector<std::string> encodings;
  std::size_t max_lag = 10;
  double cort_k = 2.0;
  unsigned workers = 1;
};

// --- commands -------------------------------------------------------------

int cmd_generate(const GenerateArgs &a, std::ostream &out) {
  check_writable(a.out);
  const std::string labels_path = a.labels.empty() ? with_suffix(a.out, ".labels.csv") : a.labels;
  check_writable(labels_path);
  const auto data = generate(a.seed, a.per_class, a.length);

  std::ostringstream rows, labels;
  write_uci(rows, data);
  std::vector<ChartClass> classes;
  for (const auto &s : data)
    classes.push_back(s.label);
  write_labels(labels, classes);
  write_file(a.out, rows.str());
  write_file(labels_path, labels.str());
  out << "wrote " << data.size() << " rows (" << kChartClassCount << " classes x "
      << a.per_class << ", length " << a.length << ") to " << a.out << "; labels in "
      << labels_path << '\n';
  return kOk;
}

int cmd_distmat(const DistmatArgs &a, std::ostream &out, std::ostream &err) {
  const bool family = a.measure == "gcdd";
  std::vector<Functional> functionals;
  MeasureSpec spec;
  spec.max_lag = a.max_lag;
  spec.cort_k = a.cort_k;
  if (family) {
    for (const auto &name : a.phi)
      functionals.push_back(parse_functional(name));
    if (functionals.empty())
      functionals.assign(kAllFunctionals.begin(), kAllFunctionals.end());
  } else {
    spec.measure = parse_measure(a.measure);
    if (!a.phi.empty())
      throw usage_error("--phi applies to --measure gcdd only");
  }

  std::vector<std::string> targets;
  if (functionals.size() > 1) {
    const fs::path p(a.out);
    for (Functional f : functionals)
      targets.push_back((p.parent_path() / (p.stem().string() + "." +
                                            std::string(measure_name(gcdd_measure(f))) +
                                            p.extension().string()))
                            .string());
  } else {
    targets.push_back(a.out);
  }
  for (const auto &t : targets)
    check_writable(t);

  const auto data = read_series(a.input, a.labels);
  const auto scheme = a.encoding.scheme(data);
  const auto start = std::chrono::steady_clock::now();
  std::vector<DissimilarityMatrix> matrices;
  if (family)
    matrices = gcdd_matrices(encode_all(data, scheme), functionals, a.workers);
  else
    matrices.push_back(dissimilarity_matrix(data, spec, scheme, a.workers));
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t m = 0; m < matrices.size(); ++m) {
    std::ostringstream csv;
    write_csv(csv, matrices[m]);
    write_file(targets[m], csv.str());
    out << "wrote " << matrices[m].size() << "x" << matrices[m].size() << " "
        << matrices[m].measure() << " matrix to " << targets[m] << '\n';
  }
  err << "elapsed " << fmt("%.3f", elapsed) << " s\n";
  return kOk;
}

int cmd_mds(const MdsArgs &a, std::ostream &out) {
  check_writable(a.out);
  const auto delta = read_matrix_file(a.input);
  std::vector<std::string> labels;
  if (!a.labels.empty()) {
    labels = symbols(read_labels_file(a.labels));
    if (labels.size() != delta.size())
      throw data_error("labels file has " + std::to_string(labels.size()) +
                       " rows but the matrix has " + std::to_string(delta.size()));
  }
  const auto result = classical_mds(delta, a.dims);
  std::ostringstream csv;
  write_embedding_csv(csv, result.coordinates, labels);
  write_file(a.out, csv.str());
  out << "stress " << format_double(result.stress) << '\n'
      << "negative eigenvalues " << result.negative_eigenvalues << '\n'
      << "clipped dimensions " << result.clipped_dimensions << '\n';
  return kOk;
}

int cmd_cluster(const ClusterArgs &a, std::ostream &out) {
  check_writable(a.out);
  const std::string report_path = a.report.empty() ? with_suffix(a.out, ".quality.json") : a.report;
  check_writable(report_path);
  if (a.method != "pam" && a.method != "average")
    throw usage_error("unknown method '" + a.method + "' (expected pam or average)");
  const auto delta = read_matrix_file(a.input);
  const auto labels = read_labels_file(a.labels);
  if (labels.size() != delta.size())
    throw data_error("labels file has " + std::to_string(labels.size()) +
                     " rows but the matrix has " + std::to_string(delta.size()));

  const Partition p = a.method == "pam" ? pam_kmedoids(delta, a.k) : average_linkage(delta, a.k);
  std::vector<int> ids;
  std::vector<bool> seen(kChartClassCount, false);
  for (ChartClass c : labels) {
    ids.push_back(static_cast<int>(c));
    seen[static_cast<std::size_t>(c)] = true;
  }
  std::vector<std::string> class_names;
  for (ChartClass c : kAllChartClasses)
    if (seen[static_cast<std::size_t>(c)])
      class_names.emplace_back(class_symbol(c));
  const auto report = quality(p, ids, delta);

  auto doc = quality_json(report, class_names);
  doc["method"] = a.method;
  doc["k"] = a.k;
  doc["measure"] = delta.measure();
  if (!p.medoids.empty())
    doc["medoids"] = p.medoids;

  std::ostringstream csv;
  write_partition_csv(csv, p);
  write_file(a.out, csv.str());
  write_file(report_path, doc.dump(2) + "\n");
  out << "purity " << format_double(report.purity) << '\n'
      << "adjusted rand " << format_double(report.adjusted_rand) << '\n'
      << "mean silhouette " << format_double(report.mean_silhouette) << '\n';
  return kOk;
}

int cmd_plot(const PlotArgs &a, std::ostream &out) {
  check_writable(a.out);
  auto in = open_input(a.input, "coordinates file");
  const auto table = read_embedding_csv(in);
  std::vector<ChartClass> labels;
  if (!a.labels.empty()) {
    labels = read_labels_file(a.labels);
    if (labels.size() != table.labels.size())
      throw data_error("labels file has " + std::to_string(labels.size()) +
                       " rows but the coordinates file has " +
                       std::to_string(table.labels.size()));
  } else {
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
      if (table.labels[i].empty())
        throw data_error("coordinates row " + std::to_string(i) +
                         " has no label; pass --labels");
      labels.push_back(parse_class_symbol(table.labels[i]));
    }
  }
  std::ostringstream svg;
  write_svg_scatter(svg, table.coordinates, labels, a.title);
  write_file(a.out, svg.str());
  out << "wrote " << labels.size() << " points to " << a.out << '\n';
  return kOk;
}

int cmd_bench(const BenchArgs &a, std::ostream &out) {
  check_writable(a.out);
  BenchOptions o;
  o.seed = a.seed;
  o.reps = a.reps;
  o.scale_per_class = a.scale_per_class;
  if (!a.encodings.empty()) {
    o.encodings.clear();
    for (const auto &e : a.encodings)
      o.encodings.push_back(parse_encoding(e));
  }
  o.spec.max_lag = a.max_lag;
  o.spec.cort_k = a.cort_k;
  o.workers = a.workers;
  if (!a.measures.empty()) {
    o.measures.clear();
    for (const auto &m : a.measures)
      o.measures.push_back(parse_measure(m));
  }
  if (o.scale_per_class == 0)
    throw usage_error("--scale-per-class must be >= 1");
  const auto data = a.input.empty() ? generate(a.seed, 100, 60)
                                    : read_dataset(a.input, a.labels).series;
  const auto doc = run_bench(data, o);
  write_file(a.out, doc.dump(2) + "\n");
  for (const auto &[encoding, block] : doc["encodings"].items())
    for (const auto &[name, entry] : block["measures"].items())
      out << encoding << ' ' << name << " median "
          << fmt("%.4f", entry["matrix_seconds_median"].get<double>()) << " s\n";
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Compression-dictionary dissimilarities and time-series clustering"};
  app.name(args.empty() ? "gcdd" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *generate_cmd = app.add_subcommand("generate", "Write a synthetic control-chart dataset");
  generate_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  generate_cmd->add_option("--per-class", gen.per_class, "Series per class")->capture_default_str();
  generate_cmd->add_option("--length", gen.length, "Samples per series")->capture_default_str();
  generate_cmd->add_option("--out", gen.out, "Data file (one series per row)")->required();
  generate_cmd->add_option("--labels", gen.labels, "Labels CSV (default <out-stem>.labels.csv)");

  DistmatArgs dm;
  auto *distmat_cmd = app.add_subcommand("distmat", "Compute a dissimilarity matrix");
  distmat_cmd->add_option("--input", dm.input, "Data file")->required();
  distmat_cmd->add_option("--labels", dm.labels, "Labels CSV (optional)");
  distmat_cmd->add_option("--measure", dm.measure,
                          "One of " + measure_names() + ", or gcdd with --phi")
      ->capture_default_str();
  distmat_cmd->add_option("--phi", dm.phi,
                          "Functional for --measure gcdd (size, entropy, huffman); repeatable");
  distmat_cmd->add_option("--encoding", dm.encoding.encoding, "quantize8 or raw")
      ->capture_default_str();
  distmat_cmd->add_option("--range", dm.encoding.range, "Quantization range: global or series")
      ->capture_default_str();
  distmat_cmd->add_option("--levels", dm.encoding.levels, "Quantization levels (2..256)")
      ->capture_default_str();
  distmat_cmd->add_option("--max-lag", dm.max_lag, "Autocorrelation lags for acf")
      ->capture_default_str();
  distmat_cmd->add_option("--cort-k", dm.cort_k, "Tuning constant for cort")->capture_default_str();
  distmat_cmd->add_option("--workers", dm.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  distmat_cmd->add_option("--out", dm.out, "Matrix CSV")->required();

  MdsArgs md;
  auto *mds_cmd = app.add_subcommand("mds", "Classical multidimensional scaling of a matrix");
  mds_cmd->add_option("--input", md.input, "Matrix CSV")->required();
  mds_cmd->add_option("--labels", md.labels, "Labels CSV copied into the output");
  mds_cmd->add_option("--dims", md.dims, "Embedding dimensions")->capture_default_str();
  mds_cmd->add_option("--out", md.out, "Coordinates CSV")->required();

  ClusterArgs cl;
  auto *cluster_cmd = app.add_subcommand("cluster", "Cluster a matrix and score the partition");
  cluster_cmd->add_option("--input", cl.input, "Matrix CSV")->required();
  cluster_cmd->add_option("--labels", cl.labels, "Labels CSV")->required();
  cluster_cmd->add_option("--k", cl.k, "Number of clusters")->capture_default_str();
  cluster_cmd->add_option("--method", cl.method, "pam or average")->capture_default_str();
  cluster_cmd->add_option("--out", cl.out, "Partition CSV")->required();
  cluster_cmd->add_option("--report", cl.report, "Quality JSON (default <out-stem>.quality.json)");

  PlotArgs pl;
  auto *plot_cmd = app.add_subcommand("plot", "SVG scatter plot of an embedding");
  plot_cmd->add_option("--input", pl.input, "Coordinates CSV")->required();
  plot_cmd->add_option("--labels", pl.labels, "Labels CSV (default: label column of the input)");
  plot_cmd->add_option("--title", pl.title, "Plot title");
  plot_cmd->add_option("--out", pl.out, "SVG file")->required();

  BenchArgs be;
  auto *bench_cmd = app.add_subcommand("bench", "Time full-matrix computation per measure");
  bench_cmd->add_option("--input", be.input, "Data file (default: generated with --seed)");
  bench_cmd->add_option("--labels", be.labels, "Labels CSV for --input");
  bench_cmd->add_option("--measure", be.measures, "Measure to time; repeatable");
  bench_cmd->add_option("--seed", be.seed, "Generator seed")->capture_default_str();
  bench_cmd->add_option("--reps", be.reps, "Timed runs after the warm-up")->capture_default_str();
  bench_cmd->add_option("--scale-per-class", be.scale_per_class,
                        "Series per class in the scaling table")
      ->capture_default_str();
  bench_cmd->add_option("--encoding", be.encodings,
                        "quantize8 or raw; repeatable (default: both)");
  bench_cmd->add_option("--max-lag", be.max_lag, "Autocorrelation lags for acf")
      ->capture_default_str();
  bench_cmd->add_option("--cort-k", be.cort_k, "Tuning constant for cort")->capture_default_str();
  bench_cmd->add_option("--workers", be.workers, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--out", be.out, "Report JSON")->required();

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  if (argv.empty())
    argv.push_back("gcdd");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*generate_cmd)
      return cmd_generate(gen, out);
    if (*distmat_cmd)
      return cmd_distmat(dm, out, err);
    if (*mds_cmd)
      return cmd_mds(md, out);
    if (*cluster_cmd)
      return cmd_cluster(cl, out);
    if (*plot_cmd)
      return cmd_plot(pl, out);
    if (*bench_cmd)
      return cmd_bench(be, out);
  } catch (const usage_error &e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

} // namespace gcdd::cli
