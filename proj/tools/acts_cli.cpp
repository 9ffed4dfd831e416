// acts — adaptive compressive tactile subsampling toolkit.
//
// Subcommands: simulate, sample, reconstruct, train-dict, gen-dict,
// classify, bench, metrics. Every command is deterministic given its
// flags (seeds included) and echoes its resolved configuration next to
// its primary output. Exit codes: 0 ok, 1 usage, 2 data error,
// 3 numeric failure.

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acts/analytics.hpp"
#include "acts/benchmark.hpp"
#include "acts/classify.hpp"
#include "acts/clock.hpp"
#include "acts/csv.hpp"
#include "acts/dictionary.hpp"
#include "acts/io.hpp"
#include "acts/parallel.hpp"
#include "acts/reconstruction.hpp"
#include "acts/replay.hpp"
#include "acts/sampling.hpp"
#include "acts/scene.hpp"
#include "acts/simulator.hpp"
#include "acts/types.hpp"

namespace fs = std::filesystem;
using namespace acts;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Resolved configuration echoed next to the primary output:
// <dir>/<stem>.<command>.config
void echo_config(const CLI::App* cmd, const std::string& primary_output) {
  fs::path out(primary_output);
  fs::path path = out.parent_path() / (out.stem().string() + "." + cmd->get_name() + ".config");
  std::ofstream os(path);
  if (!os) throw io_error("cannot write config echo " + path.string());
  os << "# acts " << cmd->get_name() << " resolved configuration\n";
  os << cmd->config_to_str(true, false);
}

std::shared_ptr<FrameSource> open_source(const std::string& scene_path,
                                         const std::string& tfr_path,
                                         SceneSpec* spec_out = nullptr) {
  if (!scene_path.empty() && !tfr_path.empty())
    throw validation_error("give either --scene or --in, not both");
  if (!scene_path.empty()) {
    SceneSpec spec = read_scene_file(scene_path);
    if (spec_out) *spec_out = spec;
    return spec.make_source();
  }
  if (!tfr_path.empty()) {
    std::vector<TactileFrame> frames = read_frame_stream(tfr_path);
    return replay_source(std::move(frames));
  }
  throw validation_error("an input is required (--scene or --in)");
}

// Zero-order-hold lookup of the ground-truth frame active at time t.
const TactileFrame& truth_at(const std::vector<TactileFrame>& truth, std::uint64_t t_us) {
  auto it = std::upper_bound(truth.begin(), truth.end(), t_us,
                             [](std::uint64_t t, const TactileFrame& f) {
                               return t < f.timestamp_us;
                             });
  return it == truth.begin() ? *it : *(it - 1);
}

TactileFrame clamped_nonneg(TactileFrame f) {
  for (float& v : f.values) v = std::max(v, 0.0f);
  return f;
}

// ------------------------------------------------------------------
// simulate
// ------------------------------------------------------------------

struct SimulateOpts {
  std::string scene, out;
  std::uint64_t frames = 0;        // 0 = derive from duration
  std::uint64_t interval_us = 1000;
  std::uint64_t start_us = 0;
};

int cmd_simulate(const SimulateOpts& o, const CLI::App* cmd) {
  SceneSpec spec = read_scene_file(o.scene);
  auto src = spec.make_source();
  if (o.interval_us < 1) throw validation_error("--interval-us must be >= 1");
  std::uint64_t count = o.frames;
  if (count == 0) count = std::max<std::uint64_t>(1, src->duration_us() / o.interval_us + 1);

  std::vector<TactileFrame> frames;
  frames.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t t = o.start_us + k * o.interval_us;
    TactileFrame f(src->rows(), src->cols(), t);
    for (int r = 0; r < src->rows(); ++r)
      for (int c = 0; c < src->cols(); ++c) f.at(r, c) = src->read({r, c}, t);
    frames.push_back(std::move(f));
  }
  write_frame_stream(o.out, frames);
  echo_config(cmd, o.out);
  std::cout << "simulate: wrote " << frames.size() << " frames (" << src->rows() << "x"
            << src->cols() << ") to " << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------
// sample
// ------------------------------------------------------------------

struct SampleOpts {
  std::string scene, in, out;
  std::string scheme = "binary";
  int m = 0;  // 0 = full raster
  double rate = 55936.0;
  std::uint64_t frames = 0;  // 0 = fill the source duration
  std::uint64_t seed = 0;
  double ns_thr = -1.0;      // <0 = 5% of full scale
  double full_scale = -1.0;  // <0 = derive from the source
  double noise = 0.0;
};

int cmd_sample(const SampleOpts& o, const CLI::App* cmd) {
  SceneSpec spec;
  auto src = open_source(o.scene, o.in, &spec);

  const int rows = src->rows(), cols = src->cols();
  const int n = rows * cols;
  SamplingConfig cfg;
  cfg.scheme = scheme_from_name(o.scheme);
  cfg.measurements_per_frame = o.m > 0 ? o.m : n;
  if (cfg.scheme == Scheme::FullRaster) cfg.measurements_per_frame = n;
  cfg.seed = o.seed;

  double full_scale = o.full_scale;
  if (full_scale < 0.0) {
    if (!o.scene.empty())
      full_scale = spec.phantom.peak_pressure;
    else {
      full_scale = 0.0;
      for (const TactileFrame& f : static_cast<const ReplaySource&>(*src).frames())
        full_scale = std::max(full_scale, double(f.max_value()));
    }
    if (full_scale <= 0.0) full_scale = 65535.0;
  }
  cfg.ns_thr = o.ns_thr >= 0.0 ? o.ns_thr : 0.05 * full_scale;

  MeasurementClock clock(o.rate);
  std::uint64_t frame_us = std::max<std::uint64_t>(
      1, clock.elapsed_us(std::uint64_t(cfg.measurements_per_frame)));
  std::uint64_t count = o.frames;
  if (count == 0) count = std::max<std::uint64_t>(1, src->duration_us() / frame_us);

  std::ofstream os(o.out, std::ios::binary);
  if (!os) throw io_error("cannot open " + o.out + " for writing");
  for (std::uint64_t k = 0; k < count; ++k) {
    MeasurementSet set = sample_frame(*src, cfg, std::uint32_t(k), clock);
    write_measurement_block(os, set);
  }
  if (!os) throw io_error("write failed: " + o.out);
  echo_config(cmd, o.out);
  std::cout << "sample: " << count << " frames, scheme " << o.scheme << ", M="
            << cfg.measurements_per_frame << ", "
            << frame_rate(cfg.measurements_per_frame, o.rate) << " FPS to " << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------
// reconstruct
// ------------------------------------------------------------------

struct ReconstructOpts {
  std::string in, dict, out, stats, truth;
  bool baseline = false;
  double sparsity_fraction = 0.25;
  int overlap = 4;
  int min_patch_meas = 1;
  bool no_clamp = false;
  double thr_frac = 0.1;
  bool timing = false;
  int threads = 0;  // 0 = ACTS_THREADS
};

int cmd_reconstruct(const ReconstructOpts& o, const CLI::App* cmd) {
  std::vector<MeasurementSet> sets = read_measurement_stream(o.in);
  if (sets.empty()) throw validation_error(o.in + ": no measurement blocks");

  Dictionary dict;
  ReconstructionParams params;
  if (!o.baseline) {
    if (o.dict.empty()) throw validation_error("--dict is required unless --baseline");
    dict = read_dictionary(o.dict);
    params.patch_rows = dict.patch_rows;
    params.patch_cols = dict.patch_cols;
    params.overlap = o.overlap;
    params.sparsity_fraction = o.sparsity_fraction;
    params.min_patch_measurements = o.min_patch_meas;
    params.nonneg_clamp = !o.no_clamp;
  }

  std::vector<TactileFrame> truth;
  if (!o.truth.empty()) truth = read_frame_stream(o.truth);

  int threads = o.threads > 0 ? o.threads : env_thread_count();

  std::vector<TactileFrame> recon;
  std::vector<double> wall_ms(sets.size(), 0.0);
  recon.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    TactileFrame f = o.baseline
                         ? clamped_nonneg(interpolate_baseline(sets[i], sets[i].rows, sets[i].cols))
                         : reconstruct_frame(sets[i], dict, params, threads);
    wall_ms[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                           start)
                     .count();
    recon.push_back(std::move(f));
  }
  write_frame_stream(o.out, recon);

  if (!o.stats.empty()) {
    std::vector<std::string> header{"frame_index", "m", "support_accuracy", "support_iou"};
    if (o.timing) header.push_back("wall_ms");
    CsvWriter csv(o.stats, header);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::string acc = "", iou = "";
      if (!truth.empty()) {
        const TactileFrame& t = truth_at(truth, recon[i].timestamp_us);
        double thr = o.thr_frac * double(t.max_value());
        acc = num(support_accuracy(recon[i], t, thr));
        iou = num(support_iou(recon[i], t, thr));
      }
      if (o.timing)
        csv.row(num(double(sets[i].frame_index)), num(double(sets[i].size())), acc, iou,
                num(wall_ms[i]));
      else
        csv.row(num(double(sets[i].frame_index)), num(double(sets[i].size())), acc, iou);
    }
  }
  echo_config(cmd, o.out);
  std::cout << "reconstruct: " << recon.size() << " frames ("
            << (o.baseline ? "interpolation baseline" : "dictionary") << ") to " << o.out
            << "\n";
  return 0;
}

// ------------------------------------------------------------------
// train-dict
// ------------------------------------------------------------------

struct TrainOpts {
  std::vector<std::string> in;
  std::string out, log;
  int patch = 8;
  int atoms = 1000;
  int sparsity = 13;
  int iters = 10;
  int count = 14907;
  int min_active = 15;
  double active_thr = -1.0;  // <0 = 2% of the observed peak
  double mu_max = 0.99;
  std::uint64_t seed = 0;
  int threads = 0;
};

int cmd_train_dict(const TrainOpts& o, const CLI::App* cmd) {
  std::vector<TactileFrame> frames;
  for (const std::string& path : o.in) {
    std::vector<TactileFrame> part = read_frame_stream(path);
    frames.insert(frames.end(), part.begin(), part.end());
  }
  if (frames.empty()) throw validation_error("no training frames");

  double peak = 0.0;
  for (const TactileFrame& f : frames) peak = std::max(peak, double(f.max_value()));
  double active_thr = o.active_thr >= 0.0 ? o.active_thr : 0.02 * peak;

  PatchSet patches =
      extract_patches(frames, o.patch, o.patch, o.count, o.min_active, active_thr, o.seed);
  if (patches.exhausted)
    std::cerr << "train-dict: only " << patches.size() << " of " << o.count
              << " requested patches were found\n";
  if (patches.patches.empty()) throw validation_error("no usable training patches");

  PatchSet pruned = prune_coherent(patches, o.mu_max);
  std::cout << "train-dict: " << patches.size() << " patches, " << pruned.size()
            << " after coherence pruning (mu_max " << o.mu_max << ")\n";

  KsvdOptions opts;
  opts.atom_count = o.atoms;
  opts.sparsity = o.sparsity;
  opts.iterations = o.iters;
  opts.seed = o.seed;
  opts.threads = o.threads > 0 ? o.threads : env_thread_count();

  std::vector<KsvdLogEntry> log;
  Dictionary dict = ksvd_train(pruned, opts, &log);
  write_dictionary(o.out, dict);

  if (!o.log.empty()) {
    CsvWriter csv(o.log, {"iteration", "mean_squared_residual", "atoms_replaced"});
    for (const KsvdLogEntry& e : log)
      csv.row(num(double(e.iteration)), num(e.mean_squared_residual),
              num(double(e.atoms_replaced)));
  }
  echo_config(cmd, o.out);
  std::cout << "train-dict: wrote " << dict.atom_count << " atoms to " << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------
// gen-dict
// ------------------------------------------------------------------

struct GenDictOpts {
  std::string kind = "dct";
  std::string out;
  int patch = 8;
  int atoms = 0;       // dct; 0 = patch^2 (orthonormal)
  int shift_step = 0;  // haar; 0 = patch/2
  int max_level = 0;   // haar; 0 = full depth
};

int cmd_gen_dict(const GenDictOpts& o, const CLI::App* cmd) {
  Dictionary dict;
  if (o.kind == "dct") {
    int atoms = o.atoms > 0 ? o.atoms : o.patch * o.patch;
    dict = overcomplete_dct(o.patch, o.patch, atoms);
  } else if (o.kind == "haar") {
    int full = 0;
    while ((1 << full) < o.patch) ++full;
    dict = overcomplete_haar(o.patch, o.patch, o.shift_step > 0 ? o.shift_step : o.patch / 2,
                             o.max_level > 0 ? o.max_level : full);
  } else {
    throw validation_error("--kind must be dct or haar");
  }
  write_dictionary(o.out, dict);
  echo_config(cmd, o.out);
  std::cout << "gen-dict: " << o.kind << " dictionary, " << dict.atom_count << " atoms to "
            << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------
// classify
// ------------------------------------------------------------------

struct ClassifyOpts {
  // build mode
  bool build_library = false;
  std::vector<std::string> classes;  // label=path.tfr
  int frames_per_class = 5;
  double quantile = 0.0;
  // predict mode
  std::string in, library, out, confusion;
  std::string true_label;
  int sparsity = -1;
  double contact_thr = 0.0;
  // rapid mode
  bool rapid = false;
  std::string scene;
  std::string scheme = "binary";
  int m = 64;
  double window_ms = 20.0;
  double rate = 55936.0;
  std::uint64_t seed = 0;
  double ns_thr = -1.0;
};

int cmd_classify(const ClassifyOpts& o, const CLI::App* cmd) {
  if (o.build_library) {
    if (o.classes.empty()) throw validation_error("--class label=path.tfr required");
    std::vector<std::pair<std::string, std::vector<TactileFrame>>> streams;
    for (const std::string& spec : o.classes) {
      std::size_t eq = spec.find('=');
      if (eq == std::string::npos)
        throw validation_error("--class expects label=path.tfr, got " + spec);
      streams.push_back({spec.substr(0, eq), read_frame_stream(spec.substr(eq + 1))});
    }
    SrcLibrary lib = build_src_library(streams, o.frames_per_class, o.quantile);
    write_src_library(o.out, lib.to_file());
    echo_config(cmd, o.out);
    std::cout << "classify: library with " << lib.class_count() << " classes, "
              << lib.entry_count() << " exemplars to " << o.out << "\n";
    return 0;
  }

  SrcLibrary lib = SrcLibrary::from_file(read_src_library(o.library));
  std::vector<std::string> header{"frame_index", "true_label", "predicted_label"};
  for (const std::string& label : lib.class_labels) header.push_back("residual_" + label);

  std::vector<std::pair<std::string, std::string>> outcomes;  // (true, predicted)
  CsvWriter csv(o.out, header);

  auto emit = [&](std::uint32_t frame, const SrcResult& res) {
    std::string predicted = res.no_contact ? "no-contact"
                                           : lib.class_labels[std::size_t(res.class_id)];
    std::vector<std::string> fields{num(double(frame)), o.true_label, predicted};
    std::ostringstream row;
    csv.row(num(double(frame)), o.true_label, predicted, [&] {
      return 0;
    }());
    (void)row;
    outcomes.push_back({o.true_label, predicted});
  };
  (void)emit;

  auto write_row = [&](std::uint32_t frame, const SrcResult& res) {
    std::string predicted = res.no_contact ? "no-contact"
                                           : lib.class_labels[std::size_t(res.class_id)];
    std::string line = num(double(frame)) + "," + o.true_label + "," + predicted;
    outcomes.push_back({o.true_label, predicted});
    return std::pair<std::string, std::string>(line, predicted);
  };
  (void)write_row;

  if (o.rapid) {
    SceneSpec spec;
    auto src = open_source(o.scene, "", &spec);
    SamplingConfig cfg;
    cfg.scheme = scheme_from_name(o.scheme);
    cfg.measurements_per_frame = o.m;
    cfg.seed = o.seed;
    cfg.ns_thr = o.ns_thr >= 0.0 ? o.ns_thr : 0.05 * spec.phantom.peak_pressure;
    double contact = o.contact_thr > 0.0 ? o.contact_thr : cfg.ns_thr;
    RapidClassifyResult res = rapid_classify(*src, lib, cfg, o.window_ms, contact, o.rate,
                                             o.sparsity);
    std::string predicted = res.src.no_contact
                                ? "no-contact"
                                : lib.class_labels[std::size_t(res.src.class_id)];
    std::vector<std::string> fields{num(double(res.classified_frame)), o.true_label, predicted};
    for (double r : res.src.class_residuals) fields.push_back(num(r));
    csv.row(fields[0], fields[1], fields[2]);  // base fields
    outcomes.push_back({o.true_label, predicted});
    std::cout << "classify: rapid label " << predicted << " from frame "
              << res.classified_frame << " (" << res.complete_frames_in_window
              << " complete frames in window)\n";
  } else {
    std::vector<MeasurementSet> sets = read_measurement_stream(o.in);
    if (sets.empty()) throw validation_error(o.in + ": no measurement blocks");
    for (const MeasurementSet& set : sets) {
      SrcResult res = src_classify(set, lib, o.sparsity, o.contact_thr);
      std::string predicted = res.no_contact
                                  ? "no-contact"
                                  : lib.class_labels[std::size_t(res.class_id)];
      std::vector<std::string> fields{num(double(set.frame_index)), o.true_label, predicted};
      for (double r : res.class_residuals) fields.push_back(num(r));
      // CsvWriter::row is variadic; use the string-vector escape hatch
      std::ostringstream line;
      csv.row(fields[0], fields[1], fields[2]);
      (void)line;
      outcomes.push_back({o.true_label, predicted});
    }
  }

  if (!o.confusion.empty()) {
    std::vector<std::string> cheader{"true_label"};
    for (const std::string& label : lib.class_labels) cheader.push_back(label);
    cheader.push_back("no-contact");
    CsvWriter ccsv(o.confusion, cheader);
    std::map<std::string, std::map<std::string, int>> counts;
    for (const auto& [t, p] : outcomes) counts[t][p]++;
    for (const auto& [t, row] : counts) {
      std::vector<std::string> fields{t};
      for (const std::string& label : lib.class_labels) {
        auto it = row.find(label);
        fields.push_back(num(it == row.end() ? 0.0 : double(it->second)));
      }
      auto nc = row.find("no-contact");
      fields.push_back(num(nc == row.end() ? 0.0 : double(nc->second)));
      ccsv.row(fields[0], fields[1]);
    }
  }

  echo_config(cmd, o.out);
  return 0;
}

// ------------------------------------------------------------------
// metrics
// ------------------------------------------------------------------

struct MetricsOpts {
  std::string in, truth, out, summary;
  double thr_frac = 0.1;
  double contact_thr = -1.0;  // <0 = thr_frac * stream max
};

int cmd_metrics(const MetricsOpts& o, const CLI::App* cmd) {
  std::vector<TactileFrame> frames = read_frame_stream(o.in);
  if (frames.empty()) throw validation_error(o.in + ": empty stream");
  std::vector<TactileFrame> truth;
  if (!o.truth.empty()) truth = read_frame_stream(o.truth);

  double stream_max = 0.0;
  for (const TactileFrame& f : frames) stream_max = std::max(stream_max, double(f.max_value()));
  double contact_thr = o.contact_thr >= 0.0 ? o.contact_thr : o.thr_frac * stream_max;

  std::vector<std::string> header{"frame_index", "timestamp_us",  "total_force",
                                  "max_value",   "cop_row",       "cop_col",
                                  "outline_count"};
  if (!truth.empty()) {
    header.push_back("support_accuracy");
    header.push_back("support_iou");
  }
  CsvWriter csv(o.out, header);

  std::vector<CopSample> cops;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const TactileFrame& f = frames[i];
    auto cop = center_of_pressure(f);
    if (cop && cop->total_force > contact_thr) cops.push_back(*cop);
    std::size_t outline_n = outline(f, o.thr_frac * double(f.max_value())).size();
    std::vector<std::string> fields{
        num(double(i)),       num(double(f.timestamp_us)), num(f.total()),
        num(double(f.max_value())), cop ? num(cop->row) : "", cop ? num(cop->col) : "",
        num(double(outline_n))};
    if (!truth.empty()) {
      const TactileFrame& t = truth_at(truth, f.timestamp_us);
      double thr = o.thr_frac * double(t.max_value());
      fields.push_back(num(support_accuracy(f, t, thr)));
      fields.push_back(num(support_iou(f, t, thr)));
    }
    csv.row(fields[0], fields[1]);
  }

  if (!o.summary.empty()) {
    CsvWriter scsv(o.summary, {"contact_frames", "force_smoothness", "ricochet_angle_deg"});
    std::string smooth = frames.size() >= 2 ? num(force_smoothness(frames)) : "";
    std::string angle;
    if (cops.size() >= 2 &&
        (cops.back().row != cops.front().row || cops.back().col != cops.front().col))
      angle = num(ricochet_angle(cops));
    scsv.row(num(double(contact_frame_count(frames, contact_thr))), smooth, angle);
  }
  echo_config(cmd, o.out);
  return 0;
}

// ------------------------------------------------------------------
// bench
// ------------------------------------------------------------------

struct BenchOpts {
  std::string campaign, out_dir;
  int threads = 0;
};

int cmd_bench(const BenchOpts& o, const CLI::App* cmd) {
  std::ifstream is(o.campaign);
  if (!is) throw io_error("cannot open campaign file " + o.campaign);
  auto kv = acts::detail::parse_kv_sections(is, o.campaign);
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (!isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };

  fs::create_directories(o.out_dir);
  std::vector<std::string> schemes = split_list(get("campaign.schemes", ""));
  std::vector<std::string> m_strs = split_list(get("campaign.m", ""));
  int trials = std::stoi(get("campaign.trials", "10"));
  std::uint64_t seed = std::stoull(get("campaign.seed", "1"));
  double rate = std::stod(get("campaign.rate", "55936"));
  int rows = std::stoi(get("campaign.rows", "32"));
  int cols = std::stoi(get("campaign.cols", "32"));
  int support_frames = std::stoi(get("campaign.support_frames", "50"));
  int code_sparsity = std::stoi(get("campaign.code_sparsity", "13"));
  int jitter = std::stoi(get("library.jitter", "1"));

  std::vector<int> m_values;
  for (const std::string& s : m_strs) m_values.push_back(std::stoi(s));

  // Dictionary for reconstruction sweeps.
  Dictionary dict;
  std::string dkind = get("dictionary.kind", "dct");
  if (dkind == "dct")
    dict = overcomplete_dct(8, 8, std::stoi(get("dictionary.atoms", "64")));
  else if (dkind == "haar")
    dict = overcomplete_haar(8, 8, std::stoi(get("dictionary.shift_step", "4")),
                             std::stoi(get("dictionary.max_level", "3")));
  else if (dkind == "file")
    dict = read_dictionary(get("dictionary.path", ""));
  else
    throw validation_error("dictionary.kind must be dct, haar or file");

  int threads = o.threads > 0 ? o.threads : env_thread_count();

  CsvWriter fps_csv(o.out_dir + "/fps_vs_m.csv", {"scheme", "m", "fps"});
  CsvWriter support_csv(o.out_dir + "/support_vs_m.csv",
                        {"scheme", "m", "method", "mean_support_accuracy", "mean_iou"});
  CsvWriter acc_csv(o.out_dir + "/accuracy_vs_m.csv",
                    {"scheme", "m", "trials", "accuracy"});

  if (!schemes.empty() && !m_values.empty()) {
    auto classes = default_phantom_classes();
    SrcLibrary lib = phantom_pose_library(classes, rows, cols, jitter);
    std::vector<TactileFrame> eval_frames =
        sparse_code_frames(dict, rows, cols, support_frames, code_sparsity, seed);

    ReconstructionParams params;
    params.patch_rows = dict.patch_rows;
    params.patch_cols = dict.patch_cols;

    for (const std::string& scheme_name_str : schemes) {
      Scheme scheme = scheme_from_name(scheme_name_str);
      for (int m : m_values) {
        fps_csv.row(scheme_name_str, num(double(m)), num(frame_rate(m, rate)));

        // support accuracy sweep: dictionary vs interpolation
        double acc_dict = 0.0, iou_dict = 0.0, acc_interp = 0.0, iou_interp = 0.0;
        for (std::size_t i = 0; i < eval_frames.size(); ++i) {
          const TactileFrame& f = eval_frames[i];
          MeasurementSet set = sample_static_frame(f, scheme, m, seed + i, rate);
          double thr = 0.1 * double(f.max_value());
          TactileFrame rd = reconstruct_frame(set, dict, params, threads);
          TactileFrame ri = clamped_nonneg(interpolate_baseline(set, rows, cols));
          acc_dict += support_accuracy(rd, f, thr);
          iou_dict += support_iou(rd, f, thr);
          acc_interp += support_accuracy(ri, f, thr);
          iou_interp += support_iou(ri, f, thr);
        }
        double nf = double(eval_frames.size());
        support_csv.row(scheme_name_str, num(double(m)), "dictionary", num(acc_dict / nf),
                        num(iou_dict / nf));
        support_csv.row(scheme_name_str, num(double(m)), "interpolation",
                        num(acc_interp / nf), num(iou_interp / nf));

        // classification sweep over jittered phantoms
        SplitMix64 rng(seed, std::uint64_t(m) * 131 + std::uint64_t(scheme));
        int correct = 0, total = 0;
        for (std::size_t c = 0; c < classes.size(); ++c) {
          for (int t = 0; t < trials; ++t) {
            Phantom ph = classes[c].second;
            ph.center_row += double(rng.below(2 * jitter + 1)) - jitter;
            ph.center_col += double(rng.below(2 * jitter + 1)) - jitter;
            TactileFrame f = render_phantom(ph, rows, cols);
            MeasurementSet set =
                sample_static_frame(f, scheme, m, seed + std::uint64_t(total), rate);
            SrcResult res = src_classify(set, lib);
            correct += (res.class_id == int(c)) ? 1 : 0;
            ++total;
          }
        }
        acc_csv.row(scheme_name_str, num(double(m)), num(double(total)),
                    num(total > 0 ? double(correct) / total : 0.0));
      }
    }
  }

  echo_config(cmd, o.out_dir + "/campaign");
  std::cout << "bench: results in " << o.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive compressive tactile subsampling toolkit"};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "render a scene to a .tfr stream");
  c_sim->add_option("--scene", sim.scene, "scene description file")->required();
  c_sim->add_option("--out", sim.out, "output .tfr path")->required();
  c_sim->add_option("--frames", sim.frames, "frame count (0 = cover scene duration)");
  c_sim->add_option("--interval-us", sim.interval_us, "frame interval in microseconds");
  c_sim->add_option("--start-us", sim.start_us, "first frame timestamp");
  c_sim->set_config("--config");

  SampleOpts smp;
  CLI::App* c_smp = app.add_subcommand("sample", "subsample a scene or stream to .tms");
  c_smp->add_option("--scene", smp.scene, "scene description file");
  c_smp->add_option("--in", smp.in, "input .tfr stream");
  c_smp->add_option("--out", smp.out, "output .tms path")->required();
  c_smp->add_option("--scheme", smp.scheme, "binary|random|uniform|raster");
  c_smp->add_option("--m", smp.m, "measurements per frame (0 = full raster)");
  c_smp->add_option("--rate", smp.rate, "ADC sample rate (Hz)");
  c_smp->add_option("--frames", smp.frames, "frame count (0 = fill source duration)");
  c_smp->add_option("--seed", smp.seed, "random scheme seed");
  c_smp->add_option("--ns-thr", smp.ns_thr, "neighbor-search threshold (<0 = 5% full scale)");
  c_smp->add_option("--full-scale", smp.full_scale, "full-scale pressure (<0 = derive)");
  c_smp->set_config("--config");

  ReconstructOpts rec;
  CLI::App* c_rec = app.add_subcommand("reconstruct", "reconstruct frames from .tms");
  c_rec->add_option("--in", rec.in, "input .tms stream")->required();
  c_rec->add_option("--dict", rec.dict, "dictionary .tdl");
  c_rec->add_option("--out", rec.out, "output .tfr path")->required();
  c_rec->add_option("--stats", rec.stats, "per-frame stats CSV");
  c_rec->add_option("--truth", rec.truth, "ground-truth .tfr for support accuracy");
  c_rec->add_flag("--baseline", rec.baseline, "linear interpolation instead of dictionary");
  c_rec->add_option("--sparsity-fraction", rec.sparsity_fraction,
                    "per-patch sparsity as a fraction of its measurements");
  c_rec->add_option("--overlap", rec.overlap, "patch overlap in pixels");
  c_rec->add_option("--min-patch-meas", rec.min_patch_meas,
                    "minimum measurements for a patch solve");
  c_rec->add_flag("--no-clamp", rec.no_clamp, "keep negative reconstruction values");
  c_rec->add_option("--thr-frac", rec.thr_frac, "support threshold fraction of truth max");
  c_rec->add_flag("--timing", rec.timing, "add wall_ms column (non-deterministic)");
  c_rec->add_option("--threads", rec.threads, "worker threads (0 = ACTS_THREADS)");
  c_rec->set_config("--config");

  TrainOpts trn;
  CLI::App* c_trn = app.add_subcommand("train-dict", "K-SVD dictionary training");
  c_trn->add_option("--in", trn.in, "training .tfr streams")->required()->expected(-1);
  c_trn->add_option("--out", trn.out, "output .tdl path")->required();
  c_trn->add_option("--log", trn.log, "training log CSV");
  c_trn->add_option("--patch", trn.patch, "patch side");
  c_trn->add_option("--atoms", trn.atoms, "dictionary size K");
  c_trn->add_option("--sparsity", trn.sparsity, "coding sparsity S");
  c_trn->add_option("--iters", trn.iters, "K-SVD iterations");
  c_trn->add_option("--count", trn.count, "patches to harvest");
  c_trn->add_option("--min-active", trn.min_active, "minimum active pixels per patch");
  c_trn->add_option("--active-thr", trn.active_thr, "active threshold (<0 = 2% of peak)");
  c_trn->add_option("--mu-max", trn.mu_max, "coherence pruning threshold");
  c_trn->add_option("--seed", trn.seed, "train seed");
  c_trn->add_option("--threads", trn.threads, "worker threads (0 = ACTS_THREADS)");
  c_trn->set_config("--config");

  GenDictOpts gen;
  CLI::App* c_gen = app.add_subcommand("gen-dict", "analytic DCT/Haar dictionaries");
  c_gen->add_option("--kind", gen.kind, "dct|haar")->required();
  c_gen->add_option("--out", gen.out, "output .tdl path")->required();
  c_gen->add_option("--patch", gen.patch, "patch side");
  c_gen->add_option("--atoms", gen.atoms, "dct atom count (perfect square)");
  c_gen->add_option("--shift-step", gen.shift_step, "haar shift lattice step");
  c_gen->add_option("--max-level", gen.max_level, "haar maximum level");
  c_gen->set_config("--config");

  ClassifyOpts cls;
  CLI::App* c_cls = app.add_subcommand("classify", "SRC library building and classification");
  c_cls->add_flag("--build-library", cls.build_library, "build a .tsrc library");
  c_cls->add_option("--class", cls.classes, "label=path.tfr (repeatable)");
  c_cls->add_option("--frames-per-class", cls.frames_per_class, "exemplars per class");
  c_cls->add_option("--quantile", cls.quantile, "pressure quantile gate [0,1)");
  c_cls->add_option("--in", cls.in, "input .tms stream");
  c_cls->add_option("--library", cls.library, "library .tsrc");
  c_cls->add_option("--out", cls.out, "output file")->required();
  c_cls->add_option("--confusion", cls.confusion, "confusion matrix CSV");
  c_cls->add_option("--true-label", cls.true_label, "ground-truth label for all frames");
  c_cls->add_option("--sparsity", cls.sparsity, "SRC sparsity (<0 = 25% of M)");
  c_cls->add_option("--contact-thr", cls.contact_thr, "no-contact guard threshold");
  c_cls->add_flag("--rapid", cls.rapid, "rapid classification after first contact");
  c_cls->add_option("--scene", cls.scene, "scene file (rapid mode)");
  c_cls->add_option("--scheme", cls.scheme, "sampling scheme (rapid mode)");
  c_cls->add_option("--m", cls.m, "measurements per frame (rapid mode)");
  c_cls->add_option("--window-ms", cls.window_ms, "window after first contact (rapid mode)");
  c_cls->add_option("--rate", cls.rate, "ADC sample rate (rapid mode)");
  c_cls->add_option("--seed", cls.seed, "random scheme seed (rapid mode)");
  c_cls->add_option("--ns-thr", cls.ns_thr, "neighbor-search threshold (rapid mode)");
  c_cls->set_config("--config");

  MetricsOpts met;
  CLI::App* c_met = app.add_subcommand("metrics", "per-frame metrics from a .tfr stream");
  c_met->add_option("--in", met.in, "input .tfr stream")->required();
  c_met->add_option("--truth", met.truth, "ground-truth .tfr");
  c_met->add_option("--out", met.out, "per-frame metrics CSV")->required();
  c_met->add_option("--summary", met.summary, "stream summary CSV");
  c_met->add_option("--thr-frac", met.thr_frac, "threshold fraction of frame max");
  c_met->add_option("--contact-thr", met.contact_thr, "contact threshold (<0 = derived)");
  c_met->set_config("--config");

  BenchOpts ben;
  CLI::App* c_ben = app.add_subcommand("bench", "benchmark campaign");
  c_ben->add_option("--campaign", ben.campaign, "campaign config file")->required();
  c_ben->add_option("--out-dir", ben.out_dir, "output directory")->required();
  c_ben->add_option("--threads", ben.threads, "worker threads (0 = ACTS_THREADS)");
  c_ben->set_config("--config");

  try {
    app.parse(argc, argv);
    if (c_sim->parsed()) return cmd_simulate(sim, c_sim);
    if (c_smp->parsed()) return cmd_sample(smp, c_smp);
    if (c_rec->parsed()) return cmd_reconstruct(rec, c_rec);
    if (c_trn->parsed()) return cmd_train_dict(trn, c_trn);
    if (c_gen->parsed()) return cmd_gen_dict(gen, c_gen);
    if (c_cls->parsed()) return cmd_classify(cls, c_cls);
    if (c_met->parsed()) return cmd_metrics(met, c_met);
    if (c_ben->parsed()) return cmd_bench(ben, c_ben);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
