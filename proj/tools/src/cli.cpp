// Copyright 2026 The arrowtime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arrowtime/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "arrowtime/cli/specs.hpp"
#include "arrowtime/errors.hpp"
#include "arrowtime/inference.hpp"
#include "arrowtime/recovery.hpp"
#include "arrowtime/serialize.hpp"

namespace arrowtime::cli {

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = kExitOk;
};

struct SimulateArgs {
  std::string state;
  std::string channel;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::string output;
};

struct InferArgs {
  std::string input;
  std::string batch;
  std::optional<double> psd_tol;
  bool json = false;
  bool pretty = false;
};

struct ExtractArgs {
  std::string input;
  std::string direction = "fwd";
  std::string method = "pinv";
  std::optional<double> psd_tol;
  std::string output;
};

struct FileArgs {
  std::string input;
  std::string direction = "fwd";
  std::string output;
};

struct RecoverArgs {
  std::string state;
  std::string channel;
  std::string method = "dilation";
  double psd_tol = kTolPsd;
  std::string output;
};

unsigned qubits_of(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  unsigned n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if ((std::size_t{1} << n) != d || n == 0) {
    throw InvalidArgument("state dimension " + std::to_string(d) +
                          " is not a qubit register");
  }
  return n;
}

CorrelatorTable load_table(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InvalidData("malformed JSON in " + path + ": " + e.what());
  }
  return table_from_json(j);
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write \"" + path + "\"");
  f << text;
}

double default_psd_tol(const CorrelatorTable& t) {
  if (t.shots) return kShotTolConstant / std::sqrt(static_cast<double>(*t.shots));
  return kTolPsd;
}

// Runs `body`, mapping library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    body();
    return kExitOk;
  } catch (const CorruptData& e) {
    err << "error: corrupt data: " << e.what() << "\n";
    return kExitCorrupt;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

void print_report(const ArrowReport& r, std::ostream& out) {
  out << "verdict:            " << to_string(r.verdict) << "\n";
  out << std::setprecision(10);
  out << "arrow measure:      ";
  if (r.arrow_measure) {
    out << *r.arrow_measure << "\n";
  } else {
    out << "n/a\n";
  }
  out << "min eig M^T1:       " << r.min_eig_fwd_t1 << "\n";
  out << "min eig Mbar^T1:    " << r.min_eig_bwd_t1 << "\n";
  out << "rank rho / gamma:   " << r.rank_rho << " / " << r.rank_gamma << "\n";
  out << "psd tolerance:      " << r.psd_tol << "\n";
  out << "residuals:          " << r.residual_fwd << " / " << r.residual_bwd
      << "\n";
  for (const auto& note : r.notes) out << "note: " << note << "\n";
}

ArrowReport classify(const CorrelatorTable& t, std::optional<double> tol) {
  return infer_arrow(t, tol.value_or(default_psd_tol(t)));
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DensityMatrix rho = parse_state(a.state);
    const KrausChannel ch = parse_channel(a.channel, qubits_of(rho));
    if (ch.d_in() != rho.dim() || ch.d_out() != rho.dim()) {
      throw InvalidArgument("channel dimensions do not match the state");
    }
    CorrelatorTable t = correlators_from_process(rho, ch);
    if (a.shots) t = sample_correlators(t, *a.shots, a.seed);
    emit(table_to_json(t), a.output, out);
  });
}

int infer_batch(const InferArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(a.batch)) {
    err << "error: \"" << a.batch << "\" is not a directory\n";
    return kExitInput;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  int worst = kExitOk;
  for (const auto& path : files) {
    Json line{{"file", path.filename().string()}};
    std::ostringstream diag;
    const int code = guarded(diag, [&] {
      const CorrelatorTable t = load_table(path.string());
      Json report = report_to_json(classify(t, a.psd_tol));
      line["report"] = std::move(report);
    });
    if (code != kExitOk) {
      std::string msg = diag.str();
      if (!msg.empty() && msg.back() == '\n') msg.pop_back();
      line["error"] = msg;
      line["exit_code"] = code;
    }
    worst = std::max(worst, code);
    out << line.dump() << "\n";
  }
  return worst;
}

int cmd_infer(const InferArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.batch.empty()) return infer_batch(a, out, err);
  if (a.input.empty()) {
    err << "error: infer needs a table file or --batch DIR\n";
    return kExitInput;
  }
  return guarded(err, [&] {
    const ArrowReport r = classify(load_table(a.input), a.psd_tol);
    if (a.pretty) {
      print_report(r, out);
    } else {
      out << report_to_json(r).dump() << "\n";
    }
  });
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CorrelatorTable t = load_table(a.input);
    const double tol = a.psd_tol.value_or(default_psd_tol(t));
    const Pdm r = pdm_from_correlators(t, Direction::Forward);
    const Marginals marg = marginals(r, tol);
    const bool forward = a.direction == "fwd";
    const Pdm p = forward ? r : pdm_from_correlators(t, Direction::Backward);
    const DensityMatrix& sigma = forward ? marg.initial : marg.final;
    ExtractionResult res = [&] {
      if (a.method == "inverse") return extract_choi_inverse(p, sigma);
      if (a.method == "sylvester") return extract_choi_sylvester(p, sigma);
      return extract_choi_pseudoinverse(p, sigma);
    }();
    Json j = extraction_to_json(res);
    j["direction"] = a.direction;
    j["method"] = a.method;
    emit(j, a.output, out);
  });
}

int cmd_swap(const FileArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    emit(table_to_json(load_table(a.input).swapped()), a.output, out);
  });
}

int cmd_pdm(const FileArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CorrelatorTable t = load_table(a.input);
    const Pdm p = pdm_from_correlators(
        t, a.direction == "fwd" ? Direction::Forward : Direction::Backward);
    Json j{{"n_qubits", p.n_qubits()},
           {"orientation",
            p.orientation() == Orientation::AsRecorded ? "as-recorded"
                                                       : "swapped"},
           {"matrix", matrix_to_json(p.matrix())},
           {"negativity", negativity(p)}};
    emit(j, a.output, out);
  });
}

int cmd_recover(const RecoverArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DensityMatrix rho = parse_state(a.state);
    const KrausChannel ch = parse_channel(a.channel, qubits_of(rho));
    if (ch.d_in() != rho.dim() || ch.d_out() != rho.dim()) {
      throw InvalidArgument("channel dimensions do not match the state");
    }
    Json j;
    if (a.method == "petz") {
      j = recovery_to_json(petz_reversal_cj(rho, cj_from_kraus(ch), a.psd_tol));
    } else if (a.method == "unitary") {
      if (ch.ops().size() != 1) {
        throw InvalidArgument(
            "unitary recovery needs a channel with a single Kraus operator");
      }
      ChoiMatrix m_bar = unitary_reversal_cj(ch.ops().front());
      const double min_eig = m_bar.min_eig_t1();
      const bool psd = m_bar.is_t1_psd(a.psd_tol);
      j = recovery_to_json(RecoveryResult{std::move(m_bar), std::nullopt, psd,
                                          min_eig, ExtractionMode::Full,
                                          RecoveryMethod::Unitary, 0.0});
    } else {
      const UnitaryDilation dil = stinespring_dilation(ch);
      j = recovery_to_json(unitary_dilation_recovery(rho, dil, a.psd_tol));
      j["entropy_delta"] = entropy_balance(rho, dil).delta;
      j["environment_dim"] = dil.d_e();
    }
    emit(j, a.output, out);
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Two-time correlator analysis: simulate tables, extract "
               "processes, and infer the direction of time."};
  app.name(args.empty() ? "arrowtime" : args.front());
  app.require_subcommand(1);
  app.set_version_flag("--version", "arrowtime 0.1.0");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a correlator table from a state and a channel");
  simulate->add_option("--state", sim.state, "State spec")->required();
  simulate->add_option("--channel", sim.channel, "Channel spec")->required();
  simulate->add_option("--shots", sim.shots, "Sample each pair with N shots")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Seed for shot sampling");
  simulate->add_option("-o,--output", sim.output, "Output file (default stdout)");

  InferArgs inf;
  auto* infer = app.add_subcommand("infer", "Classify the direction of time");
  infer->add_option("table", inf.input, "Correlator table JSON");
  infer->add_option("--batch", inf.batch, "Classify every *.json in DIR");
  infer->add_option("--psd-tol", inf.psd_tol,
                    "Positivity tolerance (default 1e-9, or 3/sqrt(shots) "
                    "for sampled tables)")
      ->check(CLI::NonNegativeNumber);
  auto* json_flag = infer->add_flag("--json", inf.json, "JSON output (default)");
  infer->add_flag("--pretty", inf.pretty, "Human-readable output")
      ->excludes(json_flag);

  ExtractArgs ext;
  auto* extract = app.add_subcommand("extract", "Extract a CJ matrix");
  extract->add_option("table", ext.input, "Correlator table JSON")->required();
  extract->add_option("--direction", ext.direction, "fwd or bwd")
      ->check(CLI::IsMember({"fwd", "bwd"}));
  extract->add_option("--method", ext.method, "inverse, pinv or sylvester")
      ->check(CLI::IsMember({"inverse", "pinv", "sylvester"}));
  extract->add_option("--psd-tol", ext.psd_tol, "Marginal positivity tolerance")
      ->check(CLI::NonNegativeNumber);
  extract->add_option("-o,--output", ext.output, "Output file (default stdout)");

  FileArgs swp;
  auto* swap = app.add_subcommand("swap", "Exchange the two time labels");
  swap->add_option("table", swp.input, "Correlator table JSON")->required();
  swap->add_option("-o,--output", swp.output, "Output file (default stdout)");

  FileArgs pdm_args;
  auto* pdm = app.add_subcommand("pdm", "Build the pseudo-density matrix");
  pdm->add_option("table", pdm_args.input, "Correlator table JSON")->required();
  pdm->add_option("--direction", pdm_args.direction, "fwd or bwd")
      ->check(CLI::IsMember({"fwd", "bwd"}));
  pdm->add_option("-o,--output", pdm_args.output, "Output file (default stdout)");

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Build a reversed-process map");
  recover->add_option("--state", rec.state, "State spec")->required();
  recover->add_option("--channel", rec.channel, "Channel spec")->required();
  recover->add_option("--method", rec.method, "dilation, unitary or petz")
      ->check(CLI::IsMember({"dilation", "unitary", "petz"}));
  recover->add_option("--psd-tol", rec.psd_tol, "Positivity tolerance")
      ->check(CLI::NonNegativeNumber);
  recover->add_option("-o,--output", rec.output, "Output file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("arrowtime");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (simulate->parsed()) return cmd_simulate(sim, out, err);
  if (infer->parsed()) return cmd_infer(inf, out, err);
  if (extract->parsed()) return cmd_extract(ext, out, err);
  if (swap->parsed()) return cmd_swap(swp, out, err);
  if (pdm->parsed()) return cmd_pdm(pdm_args, out, err);
  return cmd_recover(rec, out, err);
}

}  // namespace arrowtime::cli
