#include "cgl/config.hpp"

#include "cgl/format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace cgl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError(line, "expected a number, got '" + v + "'");
  return out;
}

long parse_long(const std::string& v, int line) {
  long out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, "expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const auto& tok : split_list(v)) out.push_back(parse_double(tok, line));
  return out;
}

std::vector<long> parse_long_list(const std::string& v, int line) {
  std::vector<long> out;
  for (const auto& tok : split_list(v)) out.push_back(parse_long(tok, line));
  return out;
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"grid", {"dim", "lengths", "n"}},
    {"params", {"lambda", "alpha", "beta", "gamma", "kappa", "q", "r", "epsilon", "mu"}},
    {"scheme", {"equation", "dt", "t_end", "splitting", "explicit_nonmonotone"}},
    {"initial", {"kind", "amplitude", "mode_indices", "path"}},
    {"forcing", {"kind", "amplitude", "path"}},
    {"diagnostics", {"record_every", "blowup_threshold"}},
    {"run", {"seed", "out_path"}},
};

void validate(const RunConfig& c) {
  const auto fail = [](const std::string& msg) { throw ConfigError(0, msg); };

  if (c.grid.dim != 1 && c.grid.dim != 2) fail("grid.dim must be 1 or 2");
  if (static_cast<int>(c.grid.lengths.size()) != c.grid.dim)
    fail("grid.lengths must list one value per axis");
  if (static_cast<int>(c.grid.n.size()) != c.grid.dim)
    fail("grid.n must list one value per axis");
  for (double l : c.grid.lengths)
    if (!(l > 0.0)) fail("grid.lengths must be positive");
  for (long n : c.grid.n)
    if (n < 3) fail("grid.n must be at least 3 per axis");

  const std::string perr = validate_params(c.params);
  if (!perr.empty()) fail(perr);

  if (!(c.scheme.dt > 0.0)) fail("scheme.dt must be positive");
  if (!(c.scheme.t_end > 0.0)) fail("scheme.t_end must be positive");
  if (!(c.scheme.dt <= c.scheme.t_end)) fail("scheme.dt must not exceed t_end");
  if (!c.scheme.explicit_nonmonotone)
    fail("scheme.explicit_nonmonotone = false is not supported");

  if (c.initial.kind == InitialKind::sine_mode) {
    if (static_cast<int>(c.initial.mode_indices.size()) != c.grid.dim)
      fail("initial.mode_indices must list one mode per axis");
    for (long k : c.initial.mode_indices)
      if (k < 1) fail("initial.mode_indices must be >= 1");
  }
  if (c.initial.kind == InitialKind::file && c.initial.path.empty())
    fail("initial.path required for kind = file");
  if (c.forcing.kind == ForcingKind::file && c.forcing.path.empty())
    fail("forcing.path required for kind = file");

  if (c.diagnostics.record_every < 1) fail("diagnostics.record_every must be >= 1");
  if (!(c.diagnostics.blowup_threshold > 0.0))
    fail("diagnostics.blowup_threshold must be positive");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::string section;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(lineno, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSchema.count(section))
        throw ConfigError(lineno, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(lineno, "key '" + key + "' outside any section");
    if (!kSchema.at(section).count(key))
      throw ConfigError(lineno, "unknown key '" + section + "." + key + "'");
    if (!seen.insert(section + "." + key).second)
      throw ConfigError(lineno, "duplicate key '" + section + "." + key + "'");

    if (section == "grid") {
      if (key == "dim") c.grid.dim = static_cast<int>(parse_long(val, lineno));
      else if (key == "lengths") c.grid.lengths = parse_double_list(val, lineno);
      else c.grid.n = parse_long_list(val, lineno);
    } else if (section == "params") {
      const double x = parse_double(val, lineno);
      if (key == "lambda") c.params.lambda = x;
      else if (key == "alpha") c.params.alpha = x;
      else if (key == "beta") c.params.beta = x;
      else if (key == "gamma") c.params.gamma = x;
      else if (key == "kappa") c.params.kappa = x;
      else if (key == "q") c.params.q = x;
      else if (key == "r") c.params.r = x;
      else if (key == "epsilon") c.params.epsilon = x;
      else c.params.mu = x;
    } else if (section == "scheme") {
      if (key == "equation") {
        if (val == "acgl") c.scheme.equation = Equation::acgl;
        else if (val == "ae_eps") c.scheme.equation = Equation::ae_eps;
        else if (val == "ae_eps_mu") c.scheme.equation = Equation::ae_eps_mu;
        else throw ConfigError(lineno, "equation must be acgl, ae_eps or ae_eps_mu");
      } else if (key == "dt") {
        c.scheme.dt = parse_double(val, lineno);
      } else if (key == "t_end") {
        c.scheme.t_end = parse_double(val, lineno);
      } else if (key == "splitting") {
        if (val == "lie") c.scheme.splitting = Splitting::lie;
        else if (val == "strang") c.scheme.splitting = Splitting::strang;
        else throw ConfigError(lineno, "splitting must be lie or strang");
      } else {
        c.scheme.explicit_nonmonotone = parse_bool(val, lineno);
      }
    } else if (section == "initial") {
      if (key == "kind") {
        if (val == "zero") c.initial.kind = InitialKind::zero;
        else if (val == "sine_mode") c.initial.kind = InitialKind::sine_mode;
        else if (val == "gaussian") c.initial.kind = InitialKind::gaussian;
        else if (val == "file") c.initial.kind = InitialKind::file;
        else throw ConfigError(lineno, "initial.kind must be zero, sine_mode, gaussian or file");
      } else if (key == "amplitude") {
        c.initial.amplitude = parse_double(val, lineno);
      } else if (key == "mode_indices") {
        c.initial.mode_indices = parse_long_list(val, lineno);
      } else {
        c.initial.path = val;
      }
    } else if (section == "forcing") {
      if (key == "kind") {
        if (val == "zero") c.forcing.kind = ForcingKind::zero;
        else if (val == "constant") c.forcing.kind = ForcingKind::constant;
        else if (val == "file") c.forcing.kind = ForcingKind::file;
        else throw ConfigError(lineno, "forcing.kind must be zero, constant or file");
      } else if (key == "amplitude") {
        c.forcing.amplitude = parse_double(val, lineno);
      } else {
        c.forcing.path = val;
      }
    } else if (section == "diagnostics") {
      if (key == "record_every") c.diagnostics.record_every = parse_long(val, lineno);
      else c.diagnostics.blowup_threshold = parse_double(val, lineno);
    } else {  // run
      if (key == "seed") c.seed = parse_long(val, lineno);
      else c.out_path = val;
    }
  }

  for (const char* req : {"grid.dim", "grid.lengths", "grid.n", "params.lambda",
                          "params.kappa", "params.q", "params.r"})
    if (!seen.count(req))
      throw ConfigError(0, std::string("missing required key '") + req + "'");

  // default the sine mode index per axis when unspecified
  if (c.initial.kind == InitialKind::sine_mode && c.initial.mode_indices.empty())
    c.initial.mode_indices.assign(static_cast<std::size_t>(c.grid.dim), 1);

  validate(c);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  const auto join_d = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + format_double(v[i]);
    return s;
  };
  const auto join_l = [](const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + format_long(v[i]);
    return s;
  };

  os << "[grid]\n";
  os << "dim = " << c.grid.dim << "\n";
  os << "lengths = " << join_d(c.grid.lengths) << "\n";
  os << "n = " << join_l(c.grid.n) << "\n";

  os << "\n[params]\n";
  os << "lambda = " << format_double(c.params.lambda) << "\n";
  os << "alpha = " << format_double(c.params.alpha) << "\n";
  os << "beta = " << format_double(c.params.beta) << "\n";
  os << "gamma = " << format_double(c.params.gamma) << "\n";
  os << "kappa = " << format_double(c.params.kappa) << "\n";
  os << "q = " << format_double(c.params.q) << "\n";
  os << "r = " << format_double(c.params.r) << "\n";
  os << "epsilon = " << format_double(c.params.epsilon) << "\n";
  os << "mu = " << format_double(c.params.mu) << "\n";

  os << "\n[scheme]\n";
  os << "equation = "
     << (c.scheme.equation == Equation::acgl
             ? "acgl"
             : c.scheme.equation == Equation::ae_eps ? "ae_eps" : "ae_eps_mu")
     << "\n";
  os << "dt = " << format_double(c.scheme.dt) << "\n";
  os << "t_end = " << format_double(c.scheme.t_end) << "\n";
  os << "splitting = " << (c.scheme.splitting == Splitting::lie ? "lie" : "strang")
     << "\n";
  os << "explicit_nonmonotone = " << (c.scheme.explicit_nonmonotone ? "true" : "false")
     << "\n";

  os << "\n[initial]\n";
  os << "kind = "
     << (c.initial.kind == InitialKind::zero
             ? "zero"
             : c.initial.kind == InitialKind::sine_mode
                   ? "sine_mode"
                   : c.initial.kind == InitialKind::gaussian ? "gaussian" : "file")
     << "\n";
  os << "amplitude = " << format_double(c.initial.amplitude) << "\n";
  if (!c.initial.mode_indices.empty())
    os << "mode_indices = " << join_l(c.initial.mode_indices) << "\n";
  if (!c.initial.path.empty()) os << "path = " << c.initial.path << "\n";

  os << "\n[forcing]\n";
  os << "kind = "
     << (c.forcing.kind == ForcingKind::zero
             ? "zero"
             : c.forcing.kind == ForcingKind::constant ? "constant" : "file")
     << "\n";
  os << "amplitude = " << format_double(c.forcing.amplitude) << "\n";
  if (!c.forcing.path.empty()) os << "path = " << c.forcing.path << "\n";

  os << "\n[diagnostics]\n";
  os << "record_every = " << c.diagnostics.record_every << "\n";
  os << "blowup_threshold = " << format_double(c.diagnostics.blowup_threshold) << "\n";

  os << "\n[run]\n";
  os << "seed = " << c.seed << "\n";
  if (!c.out_path.empty()) os << "out_path = " << c.out_path << "\n";
  return os.str();
}

}  // namespace cgl::cli
