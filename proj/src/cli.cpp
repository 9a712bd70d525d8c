#include "dqpt/cli.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

namespace dqpt::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string, std::less<>> kCommonKeys = {
    "model",  "n_cells", "t_min",     "t_max",           "n_time",
    "outputs", "n_max_critical_times", "tolerance", "verify_tolerance"};
const std::set<std::string, std::less<>> kTfiKeys = {"pre.j", "pre.h", "post.j", "post.h"};
const std::set<std::string, std::less<>> kSshKeys = {"pre.t1", "pre.t2", "post.t1",
                                                     "post.t2"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const KeyValues& kv, const std::string& key, double fallback,
                 bool required = false) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    if (required) throw ConfigError(key, "missing required key");
    return fallback;
  }
  const std::string& s = it->second;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key, "not a finite number: '" + s + "'");
  }
  return v;
}

int to_int(const KeyValues& kv, const std::string& key, int fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string& s = it->second;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key, "not an integer: '" + s + "'");
  }
  return v;
}

OutputSet parse_outputs(const std::string& s) {
  OutputSet o{false, false, false, false};
  std::string_view rest = s;
  bool any = false;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view tok = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (tok == "entropy") {
      o.entropy = true;
    } else if (tok == "echo") {
      o.echo = true;
    } else if (tok == "otoc") {
      o.otoc = true;
    } else if (tok == "rate") {
      o.rate = true;
    } else {
      throw ConfigError("outputs", "unknown output '" + std::string(tok) + "'");
    }
    any = true;
  }
  if (!any) throw ConfigError("outputs", "no outputs listed");
  return o;
}

std::string outputs_to_string(const OutputSet& o) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(o.entropy, "entropy");
  add(o.echo, "echo");
  add(o.otoc, "otoc");
  add(o.rate, "rate");
  return s;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Params>
Params checked(Params p, const char* prefix) {
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix, e.what());
  }
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void prepare_out_dir(const std::filesystem::path& dir) {
  if (dir.empty()) throw IoError("--out is required for this command");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

// Shared error-to-exit-code mapping for all commands.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const EmptyGridError& e) {
    err << "empty grid: " << e.what() << '\n';
    return kEmptyGrid;
  }
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (value.empty()) throw ConfigError(key, "empty value");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return kv;
}

SweepConfig config_from_key_values(const KeyValues& kv) {
  const auto model_it = kv.find("model");
  if (model_it == kv.end()) throw ConfigError("model", "missing required key");
  const std::string& model = model_it->second;
  if (model != "tfi" && model != "ssh") {
    throw ConfigError("model", "expected 'tfi' or 'ssh', got '" + model + "'");
  }
  const auto& model_keys = model == "tfi" ? kTfiKeys : kSshKeys;
  for (const auto& [key, value] : kv) {
    if (kCommonKeys.contains(key) || model_keys.contains(key)) continue;
    if (kTfiKeys.contains(key) || kSshKeys.contains(key)) {
      throw ConfigError(key, "does not apply to model " + model);
    }
    throw ConfigError(key, "unknown key");
  }

  SweepConfig cfg;
  if (model == "tfi") {
    const TfiParams pre = checked(TfiParams{to_double(kv, "pre.j", 1.0),
                                            to_double(kv, "pre.h", 0.0, true)},
                                  "pre");
    const TfiParams post = checked(TfiParams{to_double(kv, "post.j", 1.0),
                                             to_double(kv, "post.h", 0.0, true)},
                                   "post");
    cfg.spec = QuenchSpec(TfiQuench{pre, post});
  } else {
    const SshParams pre = checked(SshParams{to_double(kv, "pre.t1", 1.0),
                                            to_double(kv, "pre.t2", 0.0, true)},
                                  "pre");
    const SshParams post = checked(SshParams{to_double(kv, "post.t1", 1.0),
                                             to_double(kv, "post.t2", 0.0, true)},
                                   "post");
    cfg.spec = QuenchSpec(SshQuench{pre, post});
  }
  cfg.n_cells = to_int(kv, "n_cells", cfg.n_cells);
  cfg.t_min = to_double(kv, "t_min", cfg.t_min);
  cfg.t_max = to_double(kv, "t_max", cfg.t_max);
  cfg.n_time = to_int(kv, "n_time", cfg.n_time);
  if (const auto it = kv.find("outputs"); it != kv.end()) cfg.outputs = parse_outputs(it->second);
  cfg.n_max_critical_times = to_int(kv, "n_max_critical_times", cfg.n_max_critical_times);
  cfg.tolerance = to_double(kv, "tolerance", cfg.tolerance);
  cfg.verify_tolerance = to_double(kv, "verify_tolerance", cfg.verify_tolerance);

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    // validate() messages start with the field name.
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), msg);
  }
  return cfg;
}

SweepConfig parse_config(std::string_view text) {
  return config_from_key_values(parse_key_values(text));
}

SweepConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path));
}

KeyValues config_to_key_values(const SweepConfig& cfg) {
  KeyValues kv;
  kv["model"] = to_string(cfg.spec.model());
  if (cfg.spec.model() == Model::tfi) {
    const TfiQuench& q = cfg.spec.tfi();
    kv["pre.j"] = exact(q.pre.j);
    kv["pre.h"] = exact(q.pre.h);
    kv["post.j"] = exact(q.post.j);
    kv["post.h"] = exact(q.post.h);
  } else {
    const SshQuench& q = cfg.spec.ssh();
    kv["pre.t1"] = exact(q.pre.t1);
    kv["pre.t2"] = exact(q.pre.t2);
    kv["post.t1"] = exact(q.post.t1);
    kv["post.t2"] = exact(q.post.t2);
  }
  kv["n_cells"] = std::to_string(cfg.n_cells);
  kv["t_min"] = exact(cfg.t_min);
  kv["t_max"] = exact(cfg.t_max);
  kv["n_time"] = std::to_string(cfg.n_time);
  kv["outputs"] = outputs_to_string(cfg.outputs);
  kv["n_max_critical_times"] = std::to_string(cfg.n_max_critical_times);
  kv["tolerance"] = exact(cfg.tolerance);
  kv["verify_tolerance"] = exact(cfg.verify_tolerance);
  return kv;
}

std::string serialize_config(const SweepConfig& cfg) {
  std::string s;
  for (const auto& [key, value] : config_to_key_values(cfg)) s += key + " = " + value + '\n';
  return s;
}

nlohmann::json config_to_json(const SweepConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : config_to_key_values(cfg)) {
    if (key == "model") {
      j[key] = value;
    } else if (key == "outputs") {
      nlohmann::json list = nlohmann::json::array();
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        list.push_back(std::string(rest.substr(0, comma)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      j[key] = list;
    } else if (key == "n_cells" || key == "n_time" || key == "n_max_critical_times") {
      j[key] = std::stoi(value);
    } else {
      j[key] = std::stod(value);
    }
  }
  return j;
}

SweepConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config_echo", "expected a JSON object");
  KeyValues kv;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      kv[key] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      kv[key] = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      kv[key] = exact(value.get<double>());
    } else if (value.is_array()) {
      std::string s;
      for (const auto& item : value) {
        if (!s.empty()) s += ',';
        s += item.get<std::string>();
      }
      kv[key] = s;
    } else {
      throw ConfigError(key, "unsupported JSON value");
    }
  }
  return config_from_key_values(kv);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string samples_csv(const SweepResult& r, const OutputSet& outputs) {
  std::string s = "k,t";
  if (outputs.entropy) s += ",entropy";
  if (outputs.echo) s += ",echo";
  if (outputs.otoc) s += ",otoc";
  s += '\n';
  if (!outputs.any_mode_output()) return s;
  s.reserve(s.size() + r.samples.size() * 24 * 5);
  for (const DiagnosticsSample& d : r.samples) {
    s += format_number(d.k);
    s += ',';
    s += format_number(d.t);
    if (outputs.entropy) s += ',' + format_number(d.entropy);
    if (outputs.echo) s += ',' + format_number(d.loschmidt_echo);
    if (outputs.otoc) s += ',' + format_number(d.otoc);
    s += '\n';
  }
  return s;
}

std::string rate_csv(const SweepResult& r) {
  std::string s = "t,lambda\n";
  for (const RateFunctionSample& x : r.rate) {
    s += format_number(x.t) + ',' + format_number(x.lambda) + '\n';
  }
  return s;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

nlohmann::json critical_point_to_json(const CriticalPoint& cp, double tol) {
  return {
      {"k_star", cp.k_star},
      {"energy_at_kstar", cp.energy_at_kstar},
      {"critical_times", cp.critical_times},
      {"triad",
       {{"fisher_zero_ok", cp.fisher_zero_ok},
        {"entropy_max_ok", cp.entropy_max_ok},
        {"otoc_zero_ok", cp.otoc_zero_ok}}},
      {"residuals",
       {{"condition", cp.residuals.condition},
        {"min_echo", cp.residuals.min_echo},
        {"entropy_gap", cp.residuals.entropy_gap},
        {"max_otoc", cp.residuals.max_otoc}}},
      {"tolerance", tol},
  };
}

int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepConfig cfg = load_config(opt.config);
    prepare_out_dir(opt.out_dir);
    const SweepResult r = run_sweep(cfg, opt.threads);

    const std::string samples = samples_csv(r, cfg.outputs);
    const std::string rate = rate_csv(r);
    write_file(opt.out_dir / "samples.csv", samples);
    write_file(opt.out_dir / "rate.csv", rate);

    const nlohmann::json manifest = {
        {"tool_version", kToolVersion},
        {"config_echo", config_to_json(cfg)},
        {"timestamp", iso8601_now()},
        {"skipped_modes", r.skipped_modes},
        {"checksums", {{"samples.csv", sha256_hex(samples)}, {"rate.csv", sha256_hex(rate)}}},
    };
    write_file(opt.out_dir / "manifest.json", manifest.dump(2) + '\n');

    out << "wrote " << r.samples.size() << " samples and " << r.rate.size()
        << " rate points to " << opt.out_dir.string();
    if (r.skipped_modes > 0) out << " (" << r.skipped_modes << " gapless modes skipped)";
    out << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_critical(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepConfig cfg = load_config(opt.config);
    prepare_out_dir(opt.out_dir);
    const ModeGrid grid = ModeGrid::make(cfg.spec.model(), cfg.n_cells);
    const std::vector<double> roots = find_critical_momenta(cfg.spec, grid, opt.threads);

    nlohmann::json points = nlohmann::json::array();
    for (double k : roots) {
      // Three OTOC periods pi/E at 200 samples each.
      const double period = std::numbers::pi / mode_angles(k, cfg.spec).energy_post;
      std::vector<double> ts(600);
      for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 3.0 * period * i / (ts.size() - 1);
      const CriticalPoint cp =
          verify_triad(k, cfg.spec, ts, cfg.tolerance, cfg.n_max_critical_times);
      points.push_back(critical_point_to_json(cp, cfg.tolerance));
      out << "k* = " << format_number(cp.k_star) << "  t*_0 = "
          << format_number(cp.critical_times.front()) << "  triad "
          << (cp.verified() ? "verified" : "NOT verified") << '\n';
    }
    const nlohmann::json doc = {{"model", to_string(cfg.spec.model())},
                                {"critical_points", points}};
    write_file(opt.out_dir / "critical.json", doc.dump(2) + '\n');
    if (roots.empty()) {
      out << "no DQPT for this quench: the condition has no sign change on the grid\n";
      return static_cast<int>(kNoCriticalMomentum);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err,
               const oracle::ClosedForms& forms) {
  return guarded(err, [&] {
    const SweepConfig cfg = load_config(opt.config);
    const auto grid = oracle::VerificationGrid::standard(cfg.spec.model());
    const oracle::ComparisonReport rep =
        oracle::compare_with_oracle(cfg.spec, grid, forms, opt.threads);
    if (rep.cells == 0) throw EmptyGridError("every verification mode is gapless");

    out << "closed form vs oracle on " << grid.momenta.size() << "x" << grid.times.size()
        << " grid (" << rep.skipped_modes << " gapless modes skipped)\n";
    for (const oracle::Deviation& d : rep.deviations) {
      out << "  " << oracle::to_string(d.diagnostic) << " max |dev| = " << format_number(d.max_abs)
          << '\n';
    }
    if (rep.passes(cfg.verify_tolerance)) {
      out << "all deviations < " << format_number(cfg.verify_tolerance) << '\n';
      return static_cast<int>(kOk);
    }
    const oracle::Deviation& w = rep.worst();
    out << "FAILED: worst " << oracle::to_string(w.diagnostic) << " at k = "
        << format_number(w.worst_k) << ", t = " << format_number(w.worst_t)
        << ", |dev| = " << format_number(w.max_abs) << '\n';
    return static_cast<int>(kVerifyMismatch);
  });
}

}  // namespace dqpt::cli
