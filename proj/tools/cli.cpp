#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "boat/certify.hpp"
#include "boat/compile.hpp"
#include "boat/errors.hpp"
#include "boat/evolution.hpp"
#include "boat/fourier.hpp"
#include "boat/mqc.hpp"
#include "boat/serialize.hpp"
#include "manifest.hpp"
#include "time_spec.hpp"

namespace boat::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// Comma-separated angles; each entry accepts the time-spec grammar.
PhaseVector parse_phases(const std::string& text, int d) {
  PhaseVector phases(static_cast<std::size_t>(d - 1), 0.0);
  if (text.empty()) return phases;
  const auto parts = split(text, ',');
  if (parts.size() != phases.size()) {
    throw UsageError(fmt::format("--phases needs d-1 = {} comma-separated angles, got {}", d - 1,
                                 parts.size()));
  }
  for (std::size_t a = 0; a < parts.size(); ++a) {
    try {
      phases[a] = parse_time_spec(parts[a]).value();
    } catch (const TimeSpecError& e) {
      throw UsageError(std::string("--phases: ") + e.what());
    }
  }
  return phases;
}

EvolutionTime parse_time(const std::string& text) {
  try {
    return parse_time_spec(text);
  } catch (const TimeSpecError& e) {
    throw UsageError(e.what());
  }
}

Json time_json(const std::string& spec, const EvolutionTime& t) {
  Json j = {{"spec", spec}, {"radians", t.value()}};
  if (t.is_rational()) j["two_pi_fraction"] = {t.numerator(), t.denominator()};
  return j;
}

std::size_t dense_cap() {
  const char* env = std::getenv("BOAT_EXPAND_CAP");
  if (!env) return kDenseCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw UsageError(std::string("BOAT_EXPAND_CAP='") + env + "' is not a positive integer");
  }
  return static_cast<std::size_t>(v);
}

// Writes a JSON document to `output` (with manifest) or to stdout.
void emit_json(Json doc, const std::string& output, RunManifest manifest, std::ostream& out) {
  if (output.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  const auto mpath = manifest_path(output);
  doc["manifest"] = mpath.filename().string();
  write_text(output, doc.dump(2) + "\n");
  manifest.outputs.push_back(output);
  manifest.write(mpath);
}

int cmd_table(int m_max, int d_max, const std::string& output, std::ostream& out) {
  if (m_max < 2 || m_max > 8) throw UsageError(fmt::format("--m-max must lie in 2..8, got {}", m_max));
  if (d_max < 2 || d_max > 7) throw UsageError(fmt::format("--d-max must lie in 2..7, got {}", d_max));
  std::string csv = "m,d,counted,formula,agree\n";
  for (int m = 2; m <= m_max; ++m) {
    for (int d = 2; d <= d_max; ++d) {
      const auto k = verify_K(m, d);
      csv += fmt::format("{},{},{},{},{}\n", m, d, k.counted, k.formula, k.agree ? "true" : "false");
    }
  }
  if (output.empty()) {
    out << csv;
  } else {
    write_text(output, csv);
    RunManifest manifest{"table", {{"m_max", m_max}, {"d_max", d_max}}, {output}};
    manifest.write(manifest_path(output));
  }
  return kOk;
}

int cmd_evolve(int n, int d, const std::string& time_spec, const std::string& phase_text,
               const std::string& output, std::ostream& out) {
  const SystemDims dims(n, d);
  const auto t = parse_time(time_spec);
  const auto phases = parse_phases(phase_text, d);
  const auto state = evolve(coherent_state(dims, phases), t);
  Json doc = {{"n", n}, {"d", d}, {"time", time_json(time_spec, t)}, {"phases", phases},
              {"state", to_json(state)}};
  if (const auto m = t.period()) doc["ghz_report"] = to_json(ghz_check(*m, d));
  RunManifest manifest{"evolve", {{"n", n}, {"d", d}, {"time", time_spec}, {"phases", phases}}, {}};
  emit_json(std::move(doc), output, std::move(manifest), out);
  return kOk;
}

struct MqcArgs {
  int n = 0;
  int p = 2;
  int q = 1;
  std::optional<double> gamma;
  std::optional<int> samples;
  std::optional<long> shots;
  std::uint64_t seed = 20240601;
  std::string phases;
  std::string prefix = "mqc";
};

int cmd_mqc(const MqcArgs& a, std::ostream& out) {
  const SystemDims dims(a.n, 3);
  ProtocolOptions opt;
  opt.phases = parse_phases(a.phases, 3);
  opt.settings = {a.p, a.q};
  try {
    opt.settings.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (a.gamma && !(*a.gamma >= 0.0)) throw UsageError("--gamma must be nonnegative");
  if (a.shots && *a.shots < 1) throw UsageError("--shots must be >= 1");
  opt.gamma = a.gamma;
  opt.samples = a.samples;
  opt.shots = a.shots;
  opt.seed = a.seed;
  const auto result = full_protocol(dims, opt);

  const fs::path fid_path = a.prefix + "_fidelity.csv";
  const fs::path spec_path = a.prefix + "_spectrum.csv";
  const fs::path mag_path = a.prefix + "_magnitudes.json";
  const auto mpath = manifest_path(a.prefix);

  std::string fid = "phi,fidelity\n";
  for (std::size_t k = 0; k < result.phi.size(); ++k) {
    fid += num(result.phi[k]) + "," + num(result.fidelity[k]) + "\n";
  }
  std::string spec = "m,I_m\n";
  for (int m = -result.spectrum.m_max; m <= result.spectrum.m_max; ++m) {
    spec += fmt::format("{},{}\n", m, num(result.spectrum.at(m)));
  }
  const Json params = {{"n", a.n},
                       {"d", 3},
                       {"p", a.p},
                       {"q", a.q},
                       {"gamma", a.gamma ? Json(*a.gamma) : Json(nullptr)},
                       {"samples", result.spectrum.samples},
                       {"shots", a.shots ? Json(*a.shots) : Json(nullptr)},
                       {"seed", a.seed},
                       {"phases", opt.phases}};
  const Json mags = {{"settings", params},
                     {"magnitudes", to_json(result.magnitudes)},
                     {"spectrum_total", result.spectrum.total()},
                     {"manifest", mpath.filename().string()}};
  write_text(fid_path, fid);
  write_text(spec_path, spec);
  write_text(mag_path, mags.dump(2) + "\n");
  RunManifest{"mqc", params, {fid_path, spec_path, mag_path}}.write(mpath);
  out << fid_path.string() << '\n' << spec_path.string() << '\n' << mag_path.string() << '\n';
  return kOk;
}

int cmd_certify(const std::string& path, int d, const std::string& output, std::ostream& out) {
  if (d != 3) throw UsageError(fmt::format("certify supports d = 3 blocks only, got d = {}", d));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read block file " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json doc;
  try {
    doc = parse_json(text);
  } catch (const ParseError& e) {
    throw UsageError(fmt::format("{}:{}:{}: {}", path, e.line(), e.column(), e.what()));
  }
  GHZBlock block;
  try {
    block = block_from_json(doc);
  } catch (const SchemaError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const UnsupportedDimension& e) {
    throw UsageError(path + ": " + e.what());
  }
  const auto verdict = certify(fidelity_bounds(block), d);
  RunManifest manifest{"certify", {{"block", path}, {"d", d}}, {}};
  emit_json(to_json(verdict), output, std::move(manifest), out);
  return kOk;
}

struct CompileArgs {
  int n = 2;
  int d = 3;
  std::string time;
  std::string pair = "0,1";
  bool native_ms = false;
  bool verify = false;
  bool state_check = false;
  std::string output;
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  const SystemDims dims(a.n, a.d);
  const std::string spec = a.time.empty() ? fmt::format("2pi/{}", a.d) : a.time;
  const auto t = parse_time(spec);
  const auto parts = split(a.pair, ',');
  if (parts.size() != 2) throw UsageError("--pair expects two levels, e.g. 0,1");
  std::pair<int, int> pair;
  try {
    pair = {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw UsageError("--pair expects integers, e.g. 0,1");
  }
  if (pair.first < 0 || pair.second <= pair.first || pair.second >= a.d) {
    throw UsageError("--pair must satisfy 0 <= alpha < beta < d");
  }
  const std::size_t cap = dense_cap();
  if (a.verify && dims.full_size() > cap) {
    throw UsageError(fmt::format(
        "--verify builds a dense {}^{} unitary, above the cap {}; use --state-check instead "
        "(or raise BOAT_EXPAND_CAP)",
        a.d, a.n, cap));
  }
  const auto circuit = boat_circuit(dims, t, pair, a.native_ms);
  Json doc = {{"time", time_json(spec, t)},
              {"entangling_pulses", entangling_count(circuit)},
              {"circuit", to_json(circuit)}};
  if (a.verify || a.state_check) {
    const auto report = verify_equivalence(circuit, t, a.verify ? cap : 0);
    if (report.unitary_residual) doc["unitary_residual"] = *report.unitary_residual;
    doc["state_residual"] = report.state_residual;
  }
  const Json params = {{"n", a.n}, {"d", a.d}, {"time", spec}, {"pair", {pair.first, pair.second}},
                       {"native_ms", a.native_ms}, {"verify", a.verify},
                       {"state_check", a.state_check}};
  if (!a.output.empty()) {
    if (doc.contains("unitary_residual")) out << "unitary_residual " << num(doc["unitary_residual"].get<double>()) << '\n';
    if (doc.contains("state_residual")) out << "state_residual " << num(doc["state_residual"].get<double>()) << '\n';
  }
  emit_json(std::move(doc), a.output, RunManifest{"compile", params, {}}, out);
  return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BOAT qudit GHZ toolkit", "boat"};
  app.require_subcommand(1);

  int m_max = 6;
  int d_max = 7;
  std::string table_out;
  auto* table = app.add_subcommand("table", "Count nonzero Fourier coefficients over an (m, d) grid");
  table->add_option("--m-max", m_max, "Largest m (2..8)")->capture_default_str();
  table->add_option("--d-max", d_max, "Largest d (2..7)")->capture_default_str();
  table->add_option("-o,--output", table_out, "CSV file (default: stdout)");

  int ev_n = 0;
  int ev_d = 0;
  std::string ev_time;
  std::string ev_phases;
  std::string ev_out;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve the coherent state under BOAT");
  evolve_cmd->add_option("--n", ev_n, "Particle number")->required()->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--d", ev_d, "Levels per particle")->required()->check(CLI::Range(2, 64));
  evolve_cmd->add_option("--time", ev_time, "Radians, or k pi / m forms such as 2pi/3")->required();
  evolve_cmd->add_option("--phases", ev_phases, "d-1 comma-separated initial phases");
  evolve_cmd->add_option("-o,--output", ev_out, "JSON file (default: stdout)");

  MqcArgs mq;
  auto* mqc_cmd = app.add_subcommand("mqc", "Simulate the qutrit MQC echo protocol");
  mqc_cmd->add_option("--n", mq.n, "Particle number")->required()->check(CLI::PositiveNumber);
  mqc_cmd->add_option("--p", mq.p, "Probe weight of level 1")->capture_default_str();
  mqc_cmd->add_option("--q", mq.q, "Probe weight of level 2")->capture_default_str();
  mqc_cmd->add_option("--gamma", mq.gamma, "Collective dephasing strength");
  mqc_cmd->add_option("--samples", mq.samples, "Number of phi samples")->check(CLI::PositiveNumber);
  mqc_cmd->add_option("--shots", mq.shots, "Binomial readout with this many shots");
  mqc_cmd->add_option("--seed", mq.seed, "Seed for the shot sampler")->capture_default_str();
  mqc_cmd->add_option("--phases", mq.phases, "Initial phases phi_1,phi_2");
  mqc_cmd->add_option("-o,--output", mq.prefix, "Output prefix")->capture_default_str();

  std::string block_path;
  int cert_d = 3;
  std::string cert_out;
  auto* cert_cmd = app.add_subcommand("certify", "Fidelity bounds and GHZ verdict from a block file");
  cert_cmd->add_option("--block", block_path, "Block JSON document")->required();
  cert_cmd->add_option("--d", cert_d, "Qudit dimension")->capture_default_str();
  cert_cmd->add_option("-o,--output", cert_out, "JSON file (default: stdout)");

  CompileArgs ca;
  auto* comp_cmd = app.add_subcommand("compile", "Compile BOAT into serial OAT pulses");
  comp_cmd->add_option("--n", ca.n, "Particle number")->capture_default_str()->check(CLI::PositiveNumber);
  comp_cmd->add_option("--d", ca.d, "Levels per particle")->capture_default_str()->check(CLI::Range(2, 64));
  comp_cmd->add_option("--time", ca.time, "Evolution time (default 2pi/d)");
  comp_cmd->add_option("--pair", ca.pair, "Fixed entangling pair alpha,beta")->capture_default_str();
  comp_cmd->add_flag("--native-ms", ca.native_ms, "Emit MS pulses wrapped in y rotations");
  comp_cmd->add_flag("--verify", ca.verify, "Dense unitary check");
  comp_cmd->add_flag("--state-check", ca.state_check, "Symmetric-subspace state check");
  comp_cmd->add_option("-o,--output", ca.output, "JSON file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (table->parsed()) return cmd_table(m_max, d_max, table_out, out);
    if (evolve_cmd->parsed()) return cmd_evolve(ev_n, ev_d, ev_time, ev_phases, ev_out, out);
    if (mqc_cmd->parsed()) return cmd_mqc(mq, out);
    if (cert_cmd->parsed()) return cmd_certify(block_path, cert_d, cert_out, out);
    if (comp_cmd->parsed()) return cmd_compile(ca, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

} // namespace boat::cli
