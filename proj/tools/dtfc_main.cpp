// dtfc: fit, apply, code, and analyze non-uniform feature transforms.
//
// One subcommand per pipeline stage; all data goes to files or stdout
// key=value lines, diagnostics to stderr, exit 1 on any error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtfc/codec.hpp"
#include "dtfc/harness.hpp"
#include "dtfc/histogram.hpp"
#include "dtfc/npy.hpp"
#include "dtfc/reports.hpp"
#include "dtfc/synthetic.hpp"
#include "dtfc/transform.hpp"

namespace {

using namespace dtfc;

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

void print_kv(const std::string& key, double value) { print_kv(key, format_real(value)); }

void print_kv(const std::string& key, std::uint64_t value) {
  print_kv(key, std::to_string(value));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::IoError, "write failed for '" + path + "'");
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::uint32_t> parse_level_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

struct FitArgs {
  std::vector<std::string> inputs;
  std::string mode = "lloyd-max";
  std::uint32_t levels = 256;
  std::size_t restarts = 10;
  double tol = 1e-6;
  std::size_t max_iters = 200;
  std::size_t k_fit = 0;  // 0: pool every input
  double truncate_pct = 0.0;
  std::string out;
};

int cmd_fit(const FitArgs& args, std::uint64_t seed) {
  std::vector<FeatureTensor> tensors;
  tensors.reserve(args.inputs.size());
  for (const auto& path : args.inputs) tensors.push_back(load_npy(path));
  if (args.k_fit > 0 && args.k_fit < tensors.size()) {
    tensors = sample_fit_set(tensors, args.k_fit, seed);
  } else if (args.k_fit > tensors.size()) {
    fail(ErrorKind::ParamError, "--k-fit exceeds the number of inputs");
  }
  const FeatureTensor pooled = pool_values(tensors, tensors.front().source_tag);

  const FitMode mode = parse_fit_mode(args.mode);
  TransformCodebook cb;
  std::uint64_t iterations = 0;
  std::uint64_t reseeds = 0;
  if (mode == FitMode::LloydMax) {
    LloydOptions options;
    options.restarts = args.restarts;
    options.tol = args.tol;
    options.max_iters = args.max_iters;
    auto [fitted, report] = fit_lloyd_max(pooled, args.levels, seed, options);
    cb = std::move(fitted);
    iterations = report.iterations;
    reseeds = report.reseed_events;
  } else if (mode == FitMode::EqualFreq) {
    cb = fit_equal_frequency(pooled, args.levels);
  } else {
    cb = fit_uniform(pooled, args.levels, args.truncate_pct);
  }

  write_file(args.out, serialize_codebook(cb));
  print_kv("mode", mode_name(mode));
  print_kv("levels", std::uint64_t{cb.levels});
  print_kv("fit_values", std::uint64_t{pooled.values.size()});
  print_kv("final_distortion", transform_distortion(pooled, cb));
  print_kv("iterations", iterations);
  print_kv("reseed_events", reseeds);
  return 0;
}

int cmd_encode(const std::string& input, const std::string& codebook_path,
               const std::string& out) {
  const FeatureTensor data = load_npy(input);
  const TransformCodebook cb = deserialize_codebook(read_file(codebook_path));
  const SymbolPlane plane = forward_transform(data, cb);
  const Bitstream stream = encode(plane, cb);
  write_file(out, stream.bytes);

  const FeatureTensor recon = inverse_transform(plane, cb);
  print_kv("elements", std::uint64_t{data.element_count()});
  print_kv("bpfp", bpfp(stream, data.element_count()));
  print_kv("mse", mse(data, recon));
  print_kv("header_bits_share",
           static_cast<double>(stream.header_bits()) / static_cast<double>(stream.total_bits()));
  return 0;
}

int cmd_decode(const std::string& input, const std::string& out,
               const std::string& ref_path) {
  const Bitstream stream = parse_bitstream(read_file(input));
  auto [plane, cb] = decode(stream);
  const FeatureTensor recon = inverse_transform(plane, cb);
  save_npy(recon, out);
  print_kv("elements", std::uint64_t{recon.element_count()});
  print_kv("levels", std::uint64_t{cb.levels});
  print_kv("bpfp", bpfp(stream, recon.element_count()));
  if (!ref_path.empty()) {
    const FeatureTensor ref = load_npy(ref_path);
    print_kv("mse", mse(ref, recon));
  }
  return 0;
}

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::uint32_t bins = 256;
  std::string out_prefix;
  std::string codebook;
  bool svg = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
  std::vector<FeatureTensor> tensors;
  for (const auto& path : args.inputs) tensors.push_back(load_npy(path));

  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& t = tensors[i];
    const std::string base = args.out_prefix + std::to_string(i) + "_" + t.source_tag;
    const Histogram h = histogram(t, args.bins);
    write_histogram_csv(h, base + ".hist.csv");
    if (args.svg) write_histogram_svg(h, t.source_tag, base + ".hist.svg");
    print_kv("count." + t.source_tag, std::uint64_t{t.values.size()});
    print_kv("min." + t.source_tag,
             *std::min_element(t.values.begin(), t.values.end()));
    print_kv("max." + t.source_tag,
             *std::max_element(t.values.begin(), t.values.end()));
    print_kv("entropy_bits." + t.source_tag, shannon_entropy(h));
  }

  if (tensors.size() >= 2) {
    const std::vector<Histogram> shared = shared_range_histograms(tensors, args.bins);
    std::vector<std::pair<std::string, Histogram>> sources;
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      sources.emplace_back(tensors[i].source_tag, shared[i]);
    }
    write_alignment_csv(alignment_matrix(sources), args.out_prefix + "alignment.csv");
  }

  if (!args.codebook.empty()) {
    const TransformCodebook cb = deserialize_codebook(read_file(args.codebook));
    const IntervalWidthReport report = interval_width_report(cb);
    write_interval_csv(report, args.out_prefix + "intervals.csv");
    print_kv("mean_interval_width", report.mean_width);
  }
  return 0;
}

struct SweepArgs {
  std::string spec_file;
  std::string fit_path;
  std::string eval_path;
  std::string levels_csv = "2,4,8,16,32,64,128,256";
  std::string mode = "lloyd-max";
  std::string out;
  std::string svg;
};

int cmd_sweep(const SweepArgs& args, std::uint64_t seed) {
  std::string fit_path = args.fit_path;
  std::string eval_path = args.eval_path;
  std::string levels_csv = args.levels_csv;
  std::string mode = args.mode;
  std::uint64_t effective_seed = seed;

  if (!args.spec_file.empty()) {
    std::ifstream in(args.spec_file);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + args.spec_file + "'");
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "fit") fit_path = value;
      else if (key == "eval") eval_path = value;
      else if (key == "levels") levels_csv = value;
      else if (key == "mode") mode = value;
      else if (key == "seed") effective_seed = std::stoull(value);
      else fail(ErrorKind::ParamError, "unknown sweep spec key '" + key + "'");
    }
  }
  if (fit_path.empty() || eval_path.empty()) {
    fail(ErrorKind::ParamError, "sweep needs fit and eval datasets");
  }

  SweepSpec spec;
  spec.levels_list = parse_level_list(levels_csv);
  spec.fit_mode = parse_fit_mode(mode);
  spec.fit_source = load_npy(fit_path);
  spec.eval_source = load_npy(eval_path);
  spec.seed = effective_seed;

  const std::vector<RDPoint> points = run_sweep(spec);
  write_rd_csv(points, args.out);
  if (!args.svg.empty()) write_rd_svg(points, args.svg);
  print_kv("points", std::uint64_t{points.size()});
  return 0;
}

int cmd_cross(const std::vector<std::string>& inputs, std::uint32_t levels,
              const std::string& mode, const std::string& out, std::uint64_t seed) {
  std::vector<FeatureTensor> sources;
  for (const auto& path : inputs) sources.push_back(load_npy(path));
  const auto matrix = run_cross_matrix(sources, parse_fit_mode(mode), levels, seed);
  write_rd_csv(flatten(matrix), out);
  print_kv("sources", std::uint64_t{sources.size()});
  return 0;
}

struct GenArgs {
  std::string kind = "peaky-mixture";
  std::uint64_t count = 0;
  std::string out;
  std::string weights;
  std::string means;
  std::string scales;
  double scale = 1.0;
  double low = 0.0;
  double high = 1.0;
};

int cmd_gen(const GenArgs& args, std::uint64_t seed) {
  SyntheticSourceSpec spec;
  spec.kind = parse_source_kind(args.kind);
  spec.seed = seed;
  if (!args.weights.empty()) spec.weights = parse_real_list(args.weights);
  if (!args.means.empty()) spec.means = parse_real_list(args.means);
  if (!args.scales.empty()) spec.scales = parse_real_list(args.scales);
  spec.scale = args.scale;
  spec.low = args.low;
  spec.high = args.high;

  const FeatureTensor t = generate(spec, args.count);
  save_npy(t, args.out);
  print_kv("kind", kind_name(spec.kind));
  print_kv("count", std::uint64_t{t.values.size()});
  print_kv("min", *std::min_element(t.values.begin(), t.values.end()));
  print_kv("max", *std::max_element(t.values.begin(), t.values.end()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-uniform feature transform + entropy coding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --seed appear after the subcommand name

  std::uint64_t seed = 0;
  bool verbose = false;
  app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
  app.add_flag("--verbose", verbose, "chatty diagnostics on stderr");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "fit a transform codebook on feature tensors");
  fit->add_option("--input", fit_args.inputs, "input .npy files")->required()->expected(-1);
  fit->add_option("--mode", fit_args.mode, "lloyd-max | equal-freq | uniform")
      ->capture_default_str();
  fit->add_option("--levels", fit_args.levels, "codebook levels")->capture_default_str();
  fit->add_option("--restarts", fit_args.restarts, "lloyd-max restarts")->capture_default_str();
  fit->add_option("--tol", fit_args.tol, "relative convergence tolerance")
      ->capture_default_str();
  fit->add_option("--max-iters", fit_args.max_iters, "iteration cap per restart")
      ->capture_default_str();
  fit->add_option("--k-fit", fit_args.k_fit, "sample this many inputs (0: use all)")
      ->capture_default_str();
  fit->add_option("--truncate-pct", fit_args.truncate_pct, "uniform-mode tail truncation")
      ->capture_default_str();
  fit->add_option("--out", fit_args.out, "output .dtcb path")->required();

  std::string enc_input, enc_codebook, enc_out;
  auto* enc = app.add_subcommand("encode", "transform + entropy-code a tensor");
  enc->add_option("--input", enc_input, "input .npy")->required();
  enc->add_option("--codebook", enc_codebook, "fitted .dtcb")->required();
  enc->add_option("--out", enc_out, "output .dtfc stream")->required();

  std::string dec_input, dec_out, dec_ref;
  auto* dec = app.add_subcommand("decode", "decode a stream to a reconstruction");
  dec->add_option("--input", dec_input, "input .dtfc stream")->required();
  dec->add_option("--out", dec_out, "output .npy")->required();
  dec->add_option("--ref", dec_ref, "original .npy for mse reporting");

  AnalyzeArgs an_args;
  auto* an = app.add_subcommand("analyze", "histogram / entropy / alignment reports");
  an->add_option("--input", an_args.inputs, "input .npy files")->required()->expected(-1);
  an->add_option("--bins", an_args.bins, "histogram bins")->capture_default_str();
  an->add_option("--out-prefix", an_args.out_prefix, "output path prefix")->required();
  an->add_option("--codebook", an_args.codebook, "emit interval widths of this .dtcb");
  an->add_flag("--svg", an_args.svg, "also emit SVG plots");

  SweepArgs sw_args;
  auto* sw = app.add_subcommand("sweep", "rate-distortion sweep over level counts");
  sw->add_option("--spec", sw_args.spec_file, "key=value spec file");
  sw->add_option("--fit", sw_args.fit_path, "fit dataset .npy");
  sw->add_option("--eval", sw_args.eval_path, "eval dataset .npy");
  sw->add_option("--levels-list", sw_args.levels_csv, "comma-separated level counts")
      ->capture_default_str();
  sw->add_option("--mode", sw_args.mode, "fit mode")->capture_default_str();
  sw->add_option("--out", sw_args.out, "output CSV")->required();
  sw->add_option("--svg", sw_args.svg, "optional output SVG");

  std::vector<std::string> cross_inputs;
  std::uint32_t cross_levels = 256;
  std::string cross_mode = "lloyd-max";
  std::string cross_out;
  auto* cr = app.add_subcommand("cross", "cross-distribution fit/eval matrix");
  cr->add_option("--inputs", cross_inputs, "one .npy per source")->required()->expected(-1);
  cr->add_option("--levels", cross_levels, "codebook levels")->capture_default_str();
  cr->add_option("--mode", cross_mode, "fit mode")->capture_default_str();
  cr->add_option("--out", cross_out, "output CSV")->required();

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a synthetic feature tensor");
  gen->add_option("--kind", gen_args.kind, "peaky-mixture | heavy-tail | near-uniform")
      ->capture_default_str();
  gen->add_option("--count", gen_args.count, "number of values")->required();
  gen->add_option("--out", gen_args.out, "output .npy")->required();
  gen->add_option("--weights", gen_args.weights, "mixture weights (comma list)");
  gen->add_option("--means", gen_args.means, "mixture means (comma list)");
  gen->add_option("--scales", gen_args.scales, "mixture scales (comma list)");
  gen->add_option("--scale", gen_args.scale, "heavy-tail scale")->capture_default_str();
  gen->add_option("--low", gen_args.low, "near-uniform lower bound")->capture_default_str();
  gen->add_option("--high", gen_args.high, "near-uniform upper bound")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return cmd_fit(fit_args, seed);
    if (enc->parsed()) return cmd_encode(enc_input, enc_codebook, enc_out);
    if (dec->parsed()) return cmd_decode(dec_input, dec_out, dec_ref);
    if (an->parsed()) return cmd_analyze(an_args);
    if (sw->parsed()) return cmd_sweep(sw_args, seed);
    if (cr->parsed()) return cmd_cross(cross_inputs, cross_levels, cross_mode, cross_out, seed);
    if (gen->parsed()) return cmd_gen(gen_args, seed);
  } catch (const dtfc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
