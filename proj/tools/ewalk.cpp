// ewalk: batch front end for the electric quantum walk library.
//
//   ewalk simulate   --coin hadamard --field 1/5 --steps 60 --out fig1.csv
//   ewalk cfrac      --field 51/256
//   ewalk revivals   --field 51/256 --verify
//   ewalk dispersion --field 2/5 --grid 1024 --out bands.csv
//   ewalk localize   --field golden --digits 300 --truncation 100 --out fig3.csv
//   ewalk construct-field --epsilon 0.5 --intervals 0:0
//   ewalk survey     --num-fields 20 --truncation 80 --digits 200 --seed 7
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure. Errors
// are reported as a JSON object on stderr.

#include "ewalk/ewalk.hpp"
#include "ewalk/io.hpp"
#include "ewalk/run_config.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#ifndef EWALK_VERSION
#define EWALK_VERSION "dev"
#endif

namespace {

using namespace ewalk;
using io::json;

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct Outputs {
  std::string primary;
  std::string secondary;  // written next to the primary file, if any
  std::string secondary_suffix;
};

std::filesystem::path sibling(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  p.replace_extension();
  p += suffix;
  return p;
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    io::write_atomic(path, content);
  }
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (const auto part : io::split(s, sep)) out.emplace_back(part);
  return out;
}

WalkState<double> initial_state(const std::string& spec) {
  if (spec == "symmetric") return walk::symmetric_origin_state<double>();
  if (spec == "up") return WalkState<double>::point(0, {1.0}, {});
  if (spec == "down") return WalkState<double>::point(0, {}, {1.0});
  const auto parts = split_list(spec);
  if (parts.size() != 2) {
    throw input_error("config", "initial state must be symmetric, up, down or '<u>,<v>', got '" + spec + "'");
  }
  const auto u = CoinSpec::parse_complex(parts[0]);
  const auto v = CoinSpec::parse_complex(parts[1]);
  auto s = WalkState<double>::point(0, {io::parse_double(u[0]), io::parse_double(u[1])},
                                    {io::parse_double(v[0]), io::parse_double(v[1])});
  if (s.norm_squared() == 0) throw input_error("config", "initial state is zero");
  return s.normalized();
}

class Run {
 public:
  explicit Run(RunConfig cfg) : cfg_(std::move(cfg)), start_(std::chrono::steady_clock::now()) {
    if (cfg_.record_time) {
      const std::time_t now = std::time(nullptr);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      started_ = buf;
    }
  }

  int dispatch() {
    const std::string& c = cfg_.command;
    if (c == "simulate") return simulate();
    if (c == "cfrac") return cfrac();
    if (c == "revivals") return revivals();
    if (c == "dispersion") return dispersion();
    if (c == "localize") return localize();
    if (c == "construct-field") return construct_field();
    return survey();
  }

 private:
  io::Metadata metadata(unsigned precision) const {
    io::Metadata m{{"tool", "ewalk"}, {"version", EWALK_VERSION}};
    for (const auto& [k, v] : cfg_.to_kv()) m.emplace_back("config." + k, v);
    m.emplace_back("precision_digits", precision == 0 ? std::string("exact rational") : std::to_string(precision));
    if (cfg_.record_time) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      m.emplace_back("wall_clock_start", started_);
      m.emplace_back("wall_clock_seconds", render(secs));
    } else {
      m.emplace_back("wall_clock", "not recorded (pass --record-time)");
    }
    return m;
  }

  std::string dump(json body, unsigned precision) const {
    json doc;
    doc["metadata"] = io::metadata_json(metadata(precision));
    for (auto& [k, v] : body.items()) doc[k] = v;
    return doc.dump(2) + "\n";
  }

  FieldSpec field() const { return FieldSpec::parse(cfg_.field, cfg_.digits); }
  CoinSpec coin() const { return CoinSpec::parse(cfg_.coin); }

  int simulate() {
    const Coin<double> c = coin().make<double>();
    const FieldSpec f = field();
    walk::EvolveOptions opts;
    opts.max_sites = static_cast<std::size_t>(cfg_.max_sites);
    for (const auto& t : split_list(cfg_.snapshots)) opts.snapshot_times.push_back(io::parse_int(t));
    if (!opts.snapshot_times.empty() && cfg_.out == "-") {
      throw input_error("config", "distribution snapshots need --out");
    }
    const auto res = walk::evolve(initial_state(cfg_.initial), c, f, cfg_.steps, opts);
    const auto meta = metadata(std::numeric_limits<double>::digits10 + 2);
    emit(cfg_.out, io::encode_series_csv(res.series, meta));
    if (!opts.snapshot_times.empty()) {
      emit(sibling(cfg_.out, ".snapshots.csv").string(), io::encode_distributions_csv(res.series, meta));
    }
    return 0;
  }

  int cfrac() {
    const FieldSpec f = field();
    const auto expansion = cf::expand(f, static_cast<std::size_t>(cfg_.depth));
    json body = io::cfrac_json(expansion);
    body["field"] = f.to_string();
    emit(cfg_.out, dump(body, f.digits()));
    return 0;
  }

  int revivals() {
    const CoinSpec cs = coin();
    const Coin<double> c = cs.make<double>();
    const FieldSpec f = field();
    const WalkState<double> psi = initial_state(cfg_.initial);
    const std::int64_t L = cfg_.support_radius > 0 ? cfg_.support_radius : psi.support_radius();
    const auto expansion = cf::expand(f, static_cast<std::size_t>(cfg_.depth));
    const auto schedule =
        cf::revival_schedule(expansion, to_double(c.abs_a()), L, static_cast<std::size_t>(cfg_.levels));
    json certs = json::array();
    json nontrivial = json::array();
    for (const auto& cert : schedule.certificates) {
      json j = io::certificate_json(cert);
      if (cfg_.verify) j["measured"] = verify(cs, f, psi, cert);
      if (cert.nontrivial) nontrivial.push_back(j);
      certs.push_back(std::move(j));
    }
    json body{{"field", f.to_string()},
              {"expansion", expansion.to_string()},
              {"support_radius", L},
              {"certificates", certs},
              {"nontrivial", nontrivial}};
    if (!schedule.reason.empty()) body["reason"] = schedule.reason;
    emit(cfg_.out, dump(body, f.digits()));
    return 0;
  }

  // Simulated ||W^T psi + s psi|| at the certificate time, in high precision
  // whenever the bound is beyond double resolution.
  json verify(const CoinSpec& cs, const FieldSpec& f, const WalkState<double>& psi,
              const cf::RevivalCertificate& cert) const {
    if (cert.time > cfg_.max_steps) return {{"skipped", "time exceeds max_steps"}};
    const std::int64_t T = cert.time.convert_to<std::int64_t>();
    const double floor_needed = std::log10(800.0 * static_cast<double>(T) / std::max(cert.total, 1e-300));
    if (cert.total > 1e-10) {
      const double v = walk::revival_residual(cs.make<double>(), f, psi, T, cert.sign);
      return {{"deficiency", v}, {"digits", 16}, {"within_bound", v <= cert.total}};
    }
    const unsigned digits = std::max<unsigned>(cfg_.digits, static_cast<unsigned>(std::ceil(floor_needed)) + 6);
    precision_scope scope(digits);
    const hp_real v = walk::revival_residual(cs.make<hp_real>(), f, psi.cast<hp_real>(), T, cert.sign);
    return {{"deficiency", render(v)}, {"digits", digits}, {"within_bound", v <= hp_real(cert.total)}};
  }

  int dispersion() {
    const Coin<double> c = coin().make<double>();
    const auto r = field().as_rational();
    if (cfg_.grid < 1) throw input_error("config", "grid needs at least one point");
    const auto rel = spectral::dispersion(c, r.m);
    std::string out = io::metadata_block(metadata(std::numeric_limits<double>::digits10 + 2));
    out += "k,omega_plus,omega_minus,cos_omega\n";
    for (std::int64_t j = 0; j < cfg_.grid; ++j) {
      const double k = two_pi<double>() * static_cast<double>(j) / static_cast<double>(cfg_.grid);
      const auto b = rel(k);
      out += render(k) + "," + render(b.omega_plus) + "," + render(b.omega_minus) + "," + render(b.cos_omega) + "\n";
    }
    emit(cfg_.out, out);
    return 0;
  }

  int localize() {
    if (cfg_.self_test) return localize_self_test();
    if (!cfg_.rings.empty()) return localize_rings();
    const FieldSpec f = field();
    loc::TransferOptions opts;
    opts.omega = loc::QuasiEnergy::parse(cfg_.omega);
    const loc::PrecisionConfig pc{cfg_.digits, cfg_.truncation};
    const auto profile = loc::transfer_iterate(coin(), f, pc, opts);
    const auto fit = loc::localization_length(profile, loc::parse_log_base(cfg_.log_base));
    json body = io::profile_header_json(profile);
    body["fit"] = io::fit_json(fit);
    if (profile.omega.is_symmetric()) body["symmetry_defect"] = loc::symmetry_defect(profile);
    const std::string header = dump(body, cfg_.digits);
    if (cfg_.out == "-") {
      emit("-", header);
    } else {
      emit(cfg_.out, io::encode_profile_csv(profile, metadata(cfg_.digits)));
      emit(sibling(cfg_.out, ".json").string(), header);
    }
    return 0;
  }

  int localize_self_test() {
    const std::int64_t N = std::max<std::int64_t>(cfg_.truncation, 20);
    constexpr double planted = 0.5;
    std::vector<double> ln_p;
    for (std::int64_t x = -N; x <= N; ++x) ln_p.push_back(-planted * static_cast<double>(x < 0 ? -x : x));
    const auto fit = loc::localization_length(ln_p, N, loc::LogBase::natural);
    const bool passed = std::abs(fit.lambda - planted) < 1e-12;
    json body{{"self_test", "exponential P(x) = exp(-0.5|x|)"},
              {"planted", planted},
              {"fit", io::fit_json(fit)},
              {"passed", passed}};
    emit(cfg_.out, dump(body, 17));
    return passed ? 0 : exit_numerical;
  }

  int localize_rings() {
    const auto r = field().as_rational();
    std::vector<std::int64_t> sizes;
    for (const auto& s : split_list(cfg_.rings)) sizes.push_back(io::parse_int(s));
    const auto rings = loc::ring_diagonalize(coin(), r.n, r.m, sizes);
    json arr = json::array();
    for (const auto& ring : rings) {
      json profile = json::array();
      for (const auto& [x, p] : loc::recentred_probability(ring, 0.5)) profile.push_back({x, p});
      arr.push_back({{"M", ring.M},
                     {"omega", ring.omega},
                     {"x2", ring.x2},
                     {"second_x2", ring.second_x2},
                     {"center", ring.center},
                     {"residual", ring.residual},
                     {"max_residual", ring.max_residual},
                     {"recentred_probability", profile}});
    }
    emit(cfg_.out, dump({{"field", field().to_string()}, {"rings", arr}}, 17));
    return 0;
  }

  int construct_field() {
    hier::HierarchicalSpec spec;
    for (const auto& e : split_list(cfg_.epsilon)) spec.epsilons.push_back(io::parse_double(e));
    for (const auto& iv : split_list(cfg_.intervals)) {
      const auto ends = io::split(iv, ':');
      if (ends.size() != 2) throw input_error("config", "interval must be lo:hi, got '" + iv + "'");
      spec.intervals.push_back({io::parse_int(ends[0]), io::parse_int(ends[1])});
    }
    spec.max_steps = cfg_.max_steps;
    spec.max_support = cfg_.max_support;
    const auto res = hier::construct_hierarchical_field(spec, coin());
    json levels = json::array();
    for (const auto& l : res.levels) levels.push_back(io::level_json(l));
    json body{{"prefix", io::cfrac_json(res.prefix)},
              {"levels", levels},
              {"budget_exhausted", res.budget_exhausted},
              {"stop_reason", res.stop_reason}};
    emit(cfg_.out, dump(body, std::numeric_limits<double>::digits10 + 2));
    return 0;
  }

  int survey() {
    const loc::PrecisionConfig pc{cfg_.digits, cfg_.truncation};
    const auto base = loc::parse_log_base(cfg_.log_base);
    const auto res = loc::random_field_survey(coin(), static_cast<std::size_t>(cfg_.num_fields), pc, cfg_.seed, base);
    std::map<std::string, int> failures;
    std::string csv = io::metadata_block(metadata(cfg_.digits));
    csv += "index,seed,field,status,lambda,lambda_ln,residual_log10\n";
    for (const auto& e : res.entries) {
      csv += std::to_string(e.index) + "," + std::to_string(e.seed) + "," + e.field + "," + (e.ok ? "ok" : e.error) +
             "," + (e.ok ? render(e.lambda) : "") + "," + (e.ok ? render(e.lambda_natural) : "") + "," +
             (e.ok ? render(e.residual_log10) : "") + "\n";
      if (!e.ok) ++failures[e.error];
    }
    json body{{"num_fields", res.entries.size()},
              {"accepted", res.accepted},
              {"failures", failures},
              {"log_base", loc::to_string(base)},
              {"mean", res.mean},
              {"variance", res.variance}};
    const std::string summary = dump(body, cfg_.digits);
    if (cfg_.out == "-") {
      emit("-", summary);
    } else {
      emit(cfg_.out, csv);
      emit(sibling(cfg_.out, ".json").string(), summary);
    }
    return 0;
  }

  RunConfig cfg_;
  std::chrono::steady_clock::time_point start_;
  std::string started_;
};

int fail(int code, const std::string& kind, const std::string& message) {
  json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec value_flags[] = {
    {"--coin", "coin", "hadamard, or a,b complex literals (e.g. 0.6,0.8i)"},
    {"--field", "field", "n/m, decimal, decimal... (known digits), golden, pi, sqrt2, e"},
    {"--steps", "steps", "number of walk steps"},
    {"--initial", "initial", "symmetric, up, down or u,v coin amplitudes at the origin"},
    {"--digits", "digits", "decimal digits for real fields and high-precision arithmetic"},
    {"--truncation", "truncation", "truncation radius N of the transfer iteration"},
    {"--out", "out", "output file, '-' for stdout"},
    {"--seed", "seed", "random seed"},
    {"--depth", "depth", "maximum number of continued-fraction coefficients after c0"},
    {"--levels", "levels", "number of revival certificates"},
    {"--grid", "grid", "number of k points"},
    {"--omega", "omega", "quasi-energy r,s meaning r*Phi + s*pi, or a plain number"},
    {"--log-base", "log_base", "log10 or ln for the localization slope"},
    {"--epsilon", "epsilon", "comma-separated decreasing revival targets"},
    {"--intervals", "intervals", "comma-separated nested lo:hi intervals"},
    {"--max-steps", "max_steps", "simulation step budget"},
    {"--max-support", "max_support", "simulation lattice budget"},
    {"--max-sites", "max_sites", "lattice cap for simulate"},
    {"--num-fields", "num_fields", "number of random fields"},
    {"--support-radius", "support_radius", "L in the deviation bound (0: from the initial state)"},
    {"--rings", "rings", "ring sizes for periodic diagonalization (rational field n/q)"},
    {"--snapshots", "snapshots", "comma-separated times for P(x) snapshots"},
};

constexpr FlagSpec bool_flags[] = {
    {"--verify", "verify", "check certificates by simulation"},
    {"--self-test", "self_test", "fit a planted exponential instead of a walk profile"},
    {"--record-time", "record_time", "record wall-clock time in output metadata"},
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::string> command_help{
      {"simulate", "propagate a walk and write p(t), <x>, <x^2> per step"},
      {"cfrac", "certified continued fraction of the field"},
      {"revivals", "revival times and deficiency bounds from the convergents"},
      {"dispersion", "quasi-energy bands of a rational field"},
      {"localize", "transfer-matrix eigenfunction at an irrational field"},
      {"construct-field", "build a field level by level from escape intervals"},
      {"survey", "localization rates over random fields"}};
  CLI::App app{"Electric quantum walk laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EWALK_VERSION);

  struct Bound {
    std::string key;
    CLI::Option* opt;
    std::string value;
  };
  std::map<std::string, std::vector<Bound>> bound;
  std::map<std::string, std::string> config_path;
  for (const auto& name : RunConfig::commands()) {
    auto* sub = app.add_subcommand(name, command_help.at(name));
    auto& b = bound[name];
    b.reserve(std::size(value_flags) + std::size(bool_flags));
    for (const auto& f : value_flags) {
      b.push_back({f.key, nullptr, {}});
      b.back().opt = sub->add_option(f.flag, b.back().value, f.help);
    }
    for (const auto& f : bool_flags) {
      b.push_back({f.key, nullptr, "true"});
      b.back().opt = sub->add_flag(f.flag, f.help);
    }
    sub->add_option("--config", config_path[name], "key=value config file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(exit_config, "config", e.what());
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    std::map<std::string, std::string> kv;
    if (!config_path[command].empty()) kv = RunConfig::parse_file(io::read_file(config_path[command]));
    for (const auto& b : bound[command]) {
      if (b.opt->count() > 0) kv[b.key] = b.value;
    }
    Run run(RunConfig::from_kv(command, kv));
    return run.dispatch();
  } catch (const input_error& e) {
    return fail(exit_config, e.kind(), e.what());
  } catch (const numerical_error& e) {
    return fail(exit_numerical, e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(exit_numerical, "internal", e.what());
  }
}
