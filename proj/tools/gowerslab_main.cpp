// gowerslab: command-line front end for the library. One JSON envelope (or a
// CSV stream) on stdout; diagnostics on stderr. Exit 0 = success/pass,
// 1 = a check ran and failed, 2 = usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gowerslab/additive.hpp"
#include "gowerslab/bohr.hpp"
#include "gowerslab/bracket.hpp"
#include "gowerslab/equidist.hpp"
#include "gowerslab/gowers.hpp"
#include "gowerslab/nilgroup.hpp"
#include "gowerslab/parallel.hpp"
#include "gowerslab/primes.hpp"
#include "gowerslab/scalar.hpp"
#include "gowerslab/seqfn.hpp"
#include "gowerslab/verify.hpp"

using json = nlohmann::ordered_json;
using namespace gowerslab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Outcome {
  json params = json::object();
  json result = json::object();
  bool pass = true;      // drives exit code 0 vs 1 on check-style commands
  std::string csv;       // preferred CSV body; empty -> flatten result
};

// ---------- small serialization helpers ----------

Rational parse_rat(const json& v, const std::string& what) {
  if (v.is_number_integer()) return rational(v.get<long>());
  if (v.is_string()) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), v.get<std::string>().c_str(), 10) != 0)
      throw std::invalid_argument(what + ": cannot parse rational '" + v.get<std::string>() + "'");
    r.canonicalize();
    return r;
  }
  throw std::invalid_argument(what + ": rationals must be integers or \"p/q\" strings");
}

json jparse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(what + ": invalid JSON (" + e.what() + ")");
  }
}

const json& jreq(const json& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument(std::string("missing required param \"") + key + "\"");
  return *it;
}

double jget(const json& p, const char* key, std::optional<double> def = {}) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (def) return *def;
    throw std::invalid_argument(std::string("missing required param \"") + key + "\"");
  }
  return it->get<double>();
}

std::int64_t jget_i(const json& p, const char* key, std::optional<std::int64_t> def = {}) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (def) return *def;
    throw std::invalid_argument(std::string("missing required param \"") + key + "\"");
  }
  return it->get<std::int64_t>();
}

std::vector<double> jget_dv(const json& v) { return v.get<std::vector<double>>(); }

json cplx_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

std::string scalar_csv(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// key,value rows; arrays joined with ';'
std::string flatten_csv(const json& result) {
  std::string out = "key,value\n";
  for (auto& [k, v] : result.items()) {
    out += k;
    out += ',';
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += scalar_csv(v[i]);
      }
    } else if (v.is_null()) {
      out += "";
    } else {
      out += scalar_csv(v);
    }
    out += '\n';
  }
  return out;
}

// ---------- CSV input readers ----------

std::ifstream open_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file " + path);
  return in;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<std::int64_t> read_elem_csv(const std::string& path) {
  auto in = open_csv(path);
  std::string line;
  if (!std::getline(in, line) || split(line, ',')[0] != "elem")
    throw std::invalid_argument(path + ": expected header 'elem'");
  std::vector<std::int64_t> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(std::stoll(line));
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_pair_csv(const std::string& path) {
  auto in = open_csv(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y", 0) != 0)
    throw std::invalid_argument(path + ": expected header 'x,y'");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 2) throw std::invalid_argument(path + ": bad row '" + line + "'");
    out.emplace_back(std::stoll(f[0]), std::stoll(f[1]));
  }
  return out;
}

std::array<std::vector<additive::GridPoint>, 4> read_point_csv(const std::string& path) {
  auto in = open_csv(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("set,x,r", 0) != 0)
    throw std::invalid_argument(path + ": expected header 'set,x,r'");
  std::array<std::vector<additive::GridPoint>, 4> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 3) throw std::invalid_argument(path + ": bad row '" + line + "'");
    long s = std::stol(f[0]);
    if (s < 1 || s > 4) throw std::invalid_argument(path + ": set index must be 1..4");
    out[static_cast<std::size_t>(s - 1)].emplace_back(std::stoll(f[1]), std::stoll(f[2]));
  }
  return out;
}

// ---------- sequence construction ----------

// "poly:c0,c1,..." (or just "c0,c1,..."), coefficients in cycles, ascending
// degree; entries are doubles, integers, or "p/q".
SeqFn seq_from_phase(const std::string& spec, SeqFn::Dom dom, std::int64_t len,
                     const std::string& precision) {
  std::string body = spec.rfind("poly:", 0) == 0 ? spec.substr(5) : spec;
  auto parts = split(body, ',');
  if (parts.empty() || parts.size() > 4)
    throw std::invalid_argument("--phase needs 1..4 comma-separated coefficients");
  const std::int64_t start = dom == SeqFn::Dom::Interval ? 1 : 0;
  std::vector<double> ph;
  if (precision == "rational") {
    std::vector<Rational> cs;
    for (auto& s : parts) cs.push_back(parse_rat(json(s), "--phase"));
    ph = poly_phases(cs, start, len);
  } else {
    std::vector<double> cs;
    for (auto& s : parts) {
      if (s.find('/') != std::string::npos)
        cs.push_back(to_double(parse_rat(json(s), "--phase")));
      else
        cs.push_back(std::stod(s));
    }
    ph = poly_phases(cs, start, len);
  }
  SeqFn f = dom == SeqFn::Dom::Interval ? SeqFn::interval(len) : SeqFn::cyclic(len);
  for (std::int64_t i = 0; i < len; ++i)
    f.values[static_cast<std::size_t>(i)] = e_cycles(ph[static_cast<std::size_t>(i)]);
  return f;
}

Rational rand_rat(std::mt19937_64& g, long hi = 40) {
  std::uniform_int_distribution<long> num(-hi, hi), den(1, hi);
  long p = num(g), q = den(g);
  return rational(p, q);
}

// ---------- gowers ----------

struct GowersNormOpts {
  std::string domain, phase, input, method = "recursion";
  int k = 0;
  std::int64_t len = 0;
  std::int64_t mtilde = 0;
};

Outcome run_gowers_norm(const GowersNormOpts& o, const std::string& precision) {
  if (o.domain != "interval" && o.domain != "cyclic")
    throw std::invalid_argument("--domain must be interval or cyclic");
  if (o.k < 1 || o.k > 4) throw std::invalid_argument("--k must be in 1..4");
  if (o.phase.empty() == o.input.empty())
    throw std::invalid_argument("exactly one of --phase and --input is required");

  SeqFn f;
  if (!o.input.empty()) {
    auto in = open_csv(o.input);
    f = load_csv(in);
    if ((f.dom == SeqFn::Dom::Interval) != (o.domain == "interval"))
      throw std::invalid_argument("--domain disagrees with the input file");
  } else {
    if (o.len <= 0) throw std::invalid_argument("--len is required with --phase");
    f = seq_from_phase(o.phase, o.domain == "interval" ? SeqFn::Dom::Interval : SeqFn::Dom::Cyclic,
                       o.len, precision);
  }

  gowers::GowersResult r;
  if (o.domain == "cyclic") {
    gowers::Method m = o.method == "direct"      ? gowers::Method::direct
                       : o.method == "recursion" ? gowers::Method::recursion
                       : o.method == "fft"       ? gowers::Method::fft
                                                 : throw std::invalid_argument("--method must be direct, recursion or fft");
    r = gowers::gowers_norm_group(f, o.k, m);
  } else {
    r = gowers::gowers_norm_interval(f, o.k, o.mtilde > 0 ? std::optional<std::int64_t>(o.mtilde) : std::nullopt);
  }

  Outcome out;
  out.params = {{"domain", o.domain}, {"k", o.k}, {"len", f.len}, {"method", o.method}};
  if (!o.phase.empty()) out.params["phase"] = o.phase;
  if (!o.input.empty()) out.params["input"] = o.input;
  if (o.mtilde > 0) out.params["mtilde"] = o.mtilde;
  out.result = {{"norm", r.norm_value},
                {"power", r.power_value},
                {"k", r.k},
                {"method", gowers::method_name(r.method)},
                {"domain", r.domain}};
  return out;
}

Outcome run_gowers_quadruples(const json& p) {
  const std::int64_t N = jget_i(p, "N");
  if (N < 4 || N > 128) throw std::invalid_argument("N must be in [4,128]");
  gowers::ShiftSet H;
  H.N = N;
  const json& hv = jreq(p, "H");
  if (hv.is_number_integer()) {
    for (std::int64_t h = 1; h <= std::min<std::int64_t>(hv.get<std::int64_t>(), N); ++h) H.H.push_back(h);
  } else {
    H.H = hv.get<std::vector<std::int64_t>>();
  }
  const double alpha = jget(p, "alpha", 0.0), beta = jget(p, "beta", 0.0);
  const double c = jget(p, "c", 0.01);
  std::optional<double> delta;
  if (p.contains("delta") && !p["delta"].is_null()) delta = p["delta"].get<double>();
  std::optional<std::int64_t> nprime;
  if (p.contains("nprime")) nprime = p["nprime"].get<std::int64_t>();

  auto ph = poly_phases(std::vector<double>{0.0, beta, alpha}, 1, N);
  SeqFn f = SeqFn::interval(N);
  for (std::int64_t n = 0; n < N; ++n) f.values[static_cast<std::size_t>(n)] = e_cycles(ph[static_cast<std::size_t>(n)]);
  std::map<std::int64_t, SeqFn> chi;
  for (std::int64_t h : H.H) {
    SeqFn ch = SeqFn::interval(N);
    for (std::int64_t n = 1; n + h <= N; ++n)
      ch.values[static_cast<std::size_t>(n - 1)] =
          f.values[static_cast<std::size_t>(n + h - 1)] * std::conj(f.values[static_cast<std::size_t>(n - 1)]);
    chi.emplace(h, std::move(ch));
  }
  auto r = gowers::count_correlated_quadruples(f, H, chi, delta, c, nprime);

  Outcome out;
  out.params = p;
  out.result = {{"count", r.count},
                {"additive_quadruples", r.additive_quadruples},
                {"bound", r.bound},
                {"eta", r.eta},
                {"delta", r.delta},
                {"c", c},
                {"threshold", r.threshold_used},
                {"nprime", r.Nprime}};
  return out;
}

// ---------- bracket ----------

Outcome run_bracket_verify(const std::string& kase, const json& p, std::int64_t n_max,
                           std::uint64_t seed) {
  if (n_max < 1) throw std::invalid_argument("--n-max must be positive");
  std::mt19937_64 rng(seed);
  Outcome out;
  out.params = {{"case", kase}, {"n_max", n_max}, {"params", p}};

  bool pass = true;
  std::int64_t checked = 0, fail_n = 0;
  double worst = 0.0;

  auto rat_or = [&](const char* key, const Rational& fallback) {
    return p.contains(key) ? parse_rat(p[key], key) : fallback;
  };

  if (kase == "key") {
    const std::int64_t trials = p.contains("trials") ? jget_i(p, "trials") : n_max;
    for (std::int64_t t = 0; t < trials; ++t) {
      Rational X = p.contains("X") ? parse_rat(p["X"], "X") : rand_rat(rng);
      Rational Y = p.contains("Y") ? parse_rat(p["Y"], "Y") : rand_rat(rng);
      Rational res = bracket::key_identity_residual(X, Y);
      double r = std::abs(to_double(res));
      if (r > worst) worst = r;
      if (res != 0 && pass) pass = false, fail_n = t;
      ++checked;
      if (p.contains("X")) break;  // explicit pair: one check
    }
  } else if (kase == "i" || kase == "ii" || kase == "iii" || kase == "iv") {
    bracket::LemmaCase c = kase == "i"     ? bracket::LemmaCase::i
                           : kase == "ii"  ? bracket::LemmaCase::ii
                           : kase == "iii" ? bracket::LemmaCase::iii
                                           : bracket::LemmaCase::iv;
    bracket::LemmaParams lp;
    lp.alpha1 = rat_or("alpha1", rand_rat(rng));
    lp.alpha2 = rat_or("alpha2", rand_rat(rng));
    lp.alpha = rat_or("alpha", rand_rat(rng));
    lp.beta = rat_or("beta", rand_rat(rng));
    lp.beta1 = rat_or("beta1", rand_rat(rng));
    lp.beta2 = rat_or("beta2", rand_rat(rng));
    lp.gamma = rat_or("gamma", rand_rat(rng));
    auto rep = bracket::verify_bracket_lemma(c, lp, 1, n_max);
    pass = rep.pass;
    checked = rep.checked;
    fail_n = rep.fail_n;
    if (!rep.pass) worst = std::abs(to_double(smod1(rep.lhs - rep.rhs)));
  } else if (kase == "3brack") {
    Rational a = rat_or("a", rand_rat(rng));
    Rational b = rat_or("b", rand_rat(rng));
    Rational c = rat_or("c", rand_rat(rng));
    for (std::int64_t n = 1; n <= n_max; ++n) {
      Rational res = bracket::three_bracket_residual(a, b, c, n);
      double r = std::abs(to_double(res));
      if (r > worst) worst = r;
      if (res != 0 && pass) pass = false, fail_n = n;
      ++checked;
    }
  } else if (kase == "trilinear") {
    const std::int64_t range = std::min<std::int64_t>(n_max, 200);
    const std::int64_t terms = p.contains("terms") ? jget_i(p, "terms") : 2;
    // middle coefficients live in [0,1): the diagonal identity compares the
    // symmetrized half against the coefficient itself, not its residue
    auto unit_rat = [&rng] {
      std::uniform_int_distribution<long> den(1, 40);
      long q = den(rng);
      std::uniform_int_distribution<long> num(0, q - 1);
      return rational(num(rng), q);
    };
    bracket::TrilinearForm T;
    for (std::int64_t t = 0; t < terms; ++t)
      T.bracket_terms.push_back({rand_rat(rng), unit_rat(), rand_rat(rng)});
    T.plain_terms.push_back({rand_rat(rng), rand_rat(rng)});
    auto Ts = bracket::symmetrize_trilinear(T);
    for (std::int64_t x = 1; x <= 3 && pass; ++x) {
      auto rep = bracket::check_trilinear_symmetry(Ts, x, range);
      checked += rep.checked;
      if (!rep.pass) pass = false, fail_n = rep.fail_n;
    }
    auto diag = bracket::check_trilinear_diagonal(T, Ts, range);
    checked += diag.checked;
    if (!diag.pass) pass = false, fail_n = diag.fail_n;
  } else {
    throw std::invalid_argument("--case must be one of key|i|ii|iii|iv|3brack|trilinear");
  }

  out.pass = pass;
  out.result = {{"pass", pass}, {"checked", checked}, {"worst_residual", worst}};
  if (!pass) out.result["fail_n"] = fail_n;
  return out;
}

// ---------- nil ----------

template <class S>
std::string nil_eval_free2(const json& seq, const std::string& coord, std::int64_t n_max) {
  nil::PolySeq2<S> ps;
  const int k = static_cast<int>(jget_i(seq, "k"));
  if (k < 2 || k > 9) throw std::invalid_argument("free2 generator count must be in 2..9");
  for (const auto& x : jreq(seq, "xi")) {
    if constexpr (std::is_same_v<S, Rational>)
      ps.xi.push_back(parse_rat(x, "xi"));
    else
      ps.xi.push_back(x.is_string() ? to_double(parse_rat(x, "xi")) : x.get<double>());
  }
  if (static_cast<int>(ps.xi.size()) != k) throw std::invalid_argument("xi must have k entries");
  for (const auto& q : jreq(seq, "q")) {
    typename nil::PolySeq2<S>::Quad quad;
    if constexpr (std::is_same_v<S, Rational>) {
      quad.a = parse_rat(q[0], "q");
      quad.b = parse_rat(q[1], "q");
      quad.c = parse_rat(q[2], "q");
    } else {
      auto g = [](const json& v) { return v.is_string() ? to_double(parse_rat(v, "q")) : v.get<double>(); };
      quad.a = g(q[0]);
      quad.b = g(q[1]);
      quad.c = g(q[2]);
    }
    ps.q.push_back(quad);
  }
  if (static_cast<int>(ps.q.size()) != nil::dim2(k) - k)
    throw std::invalid_argument("q must have k(k-1)/2 entries");

  int idx = -1;
  if (coord.size() == 2 && coord[0] == 't') {
    int i = coord[1] - '0';
    if (i >= 1 && i <= k) idx = i - 1;
  } else if (coord.size() == 3 && coord[0] == 't') {
    int ip = coord[1] - '0', i = coord[2] - '0';
    if (i >= 1 && i < ip && ip <= k) idx = nil::pair_index(k, i, ip);
  }
  if (idx < 0) throw std::invalid_argument("unknown free2 coordinate " + coord);

  std::string csv = "n,phase\n";
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto red = nil::reduce2(nil::polyseq2_eval(ps, n));
    csv += std::to_string(n) + "," + json(to_double(red.reduced.t[static_cast<std::size_t>(idx)])).dump() + "\n";
  }
  return csv;
}

template <class S>
std::string nil_eval_free3(const json& seq, const std::string& coord, std::int64_t n_max) {
  auto g = [&](const char* key) -> S {
    if constexpr (std::is_same_v<S, Rational>)
      return parse_rat(jreq(seq, key), key);
    else {
      const json& v = jreq(seq, key);
      return v.is_string() ? to_double(parse_rat(v, key)) : v.get<double>();
    }
  };
  auto elem = nil::horizontal3<S>(g("alpha"), g("beta"), g("gamma"));
  int idx = nil::coord3_index(coord);
  if (idx < 0) throw std::invalid_argument("unknown free3 coordinate " + coord);
  std::string csv = "n,phase\n";
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto red = nil::reduce3(nil::power3(elem, n));
    csv += std::to_string(n) + "," + json(to_double(red.reduced[static_cast<std::size_t>(idx)])).dump() + "\n";
  }
  return csv;
}

Outcome run_nil_eval(const std::string& group, const std::string& seq_text, const std::string& coord,
                     std::int64_t n_max, const std::string& precision) {
  if (n_max < 1) throw std::invalid_argument("--n-max must be positive");
  json seq = jparse(seq_text, "--seq");
  Outcome out;
  out.params = {{"group", group}, {"seq", seq}, {"coord", coord}, {"n_max", n_max}};
  const bool rational_mode = precision == "rational";
  if (group == "free3") {
    out.csv = rational_mode ? nil_eval_free3<Rational>(seq, coord, n_max)
                            : nil_eval_free3<double>(seq, coord, n_max);
  } else if (group.rfind("free2:", 0) == 0) {
    json s2 = seq;
    s2["k"] = std::stoi(group.substr(6));
    out.csv = rational_mode ? nil_eval_free2<Rational>(s2, coord, n_max)
                            : nil_eval_free2<double>(s2, coord, n_max);
  } else {
    throw std::invalid_argument("--group must be free3 or free2:<k>");
  }
  // rows also available under result for JSON output
  json rows = json::array();
  std::stringstream ss(out.csv);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    auto f = split(line, ',');
    rows.push_back(json::array({std::stoll(f[0]), std::stod(f[1])}));
  }
  out.result = {{"rows", rows}};
  return out;
}

Outcome run_nil_power_check(const json& p) {
  const std::int64_t n_max = jget_i(p, "n_max", 200);
  if (n_max < 1 || n_max > 2000) throw std::invalid_argument("n_max must be in 1..2000");
  Rational a = parse_rat(jreq(p, "alpha"), "alpha");
  Rational b = parse_rat(jreq(p, "beta"), "beta");
  Rational c = parse_rat(jreq(p, "gamma"), "gamma");
  auto g = nil::horizontal3<Rational>(a, b, c);

  bool pass = true;
  std::int64_t fail_n = 0;
  double worst = 0.0;
  auto acc = nil::identity3<Rational>();
  for (std::int64_t n = 1; n <= n_max && pass; ++n) {
    acc = nil::mul3(acc, g);           // iterated multiplication
    auto pw = nil::power3(g, n);       // square-and-multiply
    for (std::size_t i = 0; i < 14; ++i) {
      Rational d = pw[i] - acc[i];
      if (d != 0) {
        pass = false;
        fail_n = n;
        worst = std::max(worst, std::abs(to_double(d)));
      }
    }
    Rational d2 = smod1(nil::f312_orbit_group<Rational>(a, b, c, n) -
                        nil::f312_orbit_closed<Rational>(a, b, c, n));
    if (d2 != 0) {
      pass = false;
      fail_n = n;
      worst = std::max(worst, to_double(dist_to_z(d2)));
    }
  }

  Outcome out;
  out.params = p;
  out.pass = pass;
  out.result = {{"pass", pass}, {"n_max", n_max}, {"max_residual", worst}};
  if (!pass) out.result["fail_n"] = fail_n;
  return out;
}

// ---------- equidist ----------

equidist::TorusOrbit orbit_from_params(const json& p) {
  const std::int64_t N = jget_i(p, "N");
  if (p.contains("alphas")) return equidist::linear_orbit(jget_dv(p["alphas"]), N);
  equidist::TorusOrbit orb;
  orb.N = N;
  for (const auto& row : jreq(p, "gen")) {
    auto v = jget_dv(row);
    if (v.size() > 4) throw std::invalid_argument("gen rows take at most 4 coefficients");
    std::array<double, 4> a{0, 0, 0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = v[i];
    orb.gen.push_back(a);
  }
  return orb;
}

Outcome run_equidist(const std::string& which, const json& p) {
  Outcome out;
  out.params = p;
  if (which == "weyl") {
    auto v = jget_dv(jreq(p, "alpha"));
    if (v.size() > 4) throw std::invalid_argument("alpha takes at most 4 coefficients");
    std::array<double, 4> a{0, 0, 0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = v[i];
    auto z = equidist::weyl_sum(a, jget_i(p, "N"));
    out.result = {{"sum", cplx_json(z)}, {"modulus", std::abs(z)}};
  } else if (which == "test") {
    auto rep = equidist::equidist_test(orbit_from_params(p), jget(p, "eps"),
                                       static_cast<int>(jget_i(p, "M", 10)));
    out.result = {{"equidistributed", rep.equidistributed},
                  {"witness", rep.equidistributed ? json() : json(rep.witness)},
                  {"magnitude", rep.magnitude}};
  } else if (which == "relation") {
    auto m = equidist::integer_relation(jget_dv(jreq(p, "alphas")),
                                        static_cast<int>(jget_i(p, "M", 10)), jget(p, "tol"));
    out.result = {{"found", m.has_value()}, {"m", m ? json(*m) : json()}};
  } else {  // ratapprox
    auto r = equidist::rational_approx(jget(p, "alpha"), jget_i(p, "Q"));
    out.result = {{"approx", std::to_string(r.a) + "/" + std::to_string(r.q)},
                  {"a", r.a},
                  {"q", r.q},
                  {"err", r.err}};
  }
  return out;
}

// ---------- bohr ----------

Outcome run_bohr(const std::string& which, const json& p) {
  Outcome out;
  out.params = p;
  if (which == "build") {
    auto B = bohr::build_bohr(jget_dv(jreq(p, "S")), jget(p, "rho"), jget_i(p, "N"));
    out.result = {{"d", B.d()}, {"rho", B.rho}, {"N", B.N},
                  {"size", static_cast<std::int64_t>(B.members.size())}, {"members", B.members}};
    out.csv = "member\n";
    for (auto m : B.members) out.csv += std::to_string(m) + "\n";
  } else if (which == "regular") {
    std::vector<double> grid;
    if (p.contains("grid")) grid = jget_dv(p["grid"]);
    auto r = bohr::find_regular(jget_dv(jreq(p, "S")), jget(p, "rho0"), jget_i(p, "N"),
                                jget(p, "C_reg", 100.0), grid);
    out.pass = r.found;
    out.result = {{"found", r.found}, {"rho", r.rho}, {"score", r.score}, {"rejected", r.rejected}};
  } else {  // decompose
    auto B = bohr::build_bohr(jget_dv(jreq(p, "S")), jget(p, "rho"), jget_i(p, "N"));
    auto d = bohr::cutoff_decomposition(B, jget(p, "eps"));
    out.result = {{"size", static_cast<std::int64_t>(B.members.size())},
                  {"rho_prime", d.rho_prime},
                  {"psi2_mass", d.psi2_mass},
                  {"l1_fourier_mass", d.l1_fourier_mass}};
    std::stringstream ss;
    save_csv(d.psi1, ss);
    out.csv = ss.str();
  }
  return out;
}

// ---------- sumset ----------

Outcome run_sumset(const std::string& which, const std::string& input, const json& p) {
  Outcome out;
  out.params = p;
  out.params["input"] = input;
  if (which == "lev") {
    auto A = additive::make_intset(jget_i(p, "N"), read_elem_csv(input));
    auto d = additive::find_lev_progression(A, static_cast<int>(jget_i(p, "k")));
    out.result = {{"found", d.has_value()}, {"d", d ? json(*d) : json()}, {"alpha", A.alpha}};
  } else if (which == "bilinear") {
    auto A = additive::make_pairset(jget_i(p, "N"), read_pair_csv(input));
    if (p.contains("k")) {
      auto dd = additive::find_product_progression(A, jget_i(p, "k"));
      out.result = {{"found", dd.has_value()},
                    {"d", dd ? json(dd->first) : json()},
                    {"d_prime", dd ? json(dd->second) : json()},
                    {"alpha", A.alpha}};
    } else {
      auto Q = additive::bilinear_oplus(A);
      out.result = {{"size", static_cast<std::int64_t>(Q.pairs.size())}, {"lo", Q.lo}, {"hi", Q.hi}};
      out.csv = "x,y\n";
      for (auto& [x, y] : Q.pairs) out.csv += std::to_string(x) + "," + std::to_string(y) + "\n";
    }
  } else {  // energy
    auto S = read_point_csv(input);
    auto e = additive::additive_energy(S[0], S[1], S[2], S[3], jget_i(p, "grid"));
    out.result = {{"energy", e}};
  }
  return out;
}

// ---------- primes ----------

Outcome run_primes_gamma(std::int64_t pmax) {
  auto g = primes::hl_gamma(pmax);
  Outcome out;
  out.params = {{"pmax", pmax}};
  out.result = {{"P", g.P}, {"value", static_cast<double>(g.value)}, {"tail_bound", g.tail_bound}};
  return out;
}

Outcome run_primes_count(std::int64_t n) {
  Outcome out;
  out.params = {{"n", n}};
  out.result = {{"count", primes::count_prime_5aps(n)}};
  return out;
}

Outcome run_primes_compare(std::int64_t n) {
  auto r = primes::compare_asymptotic(n);
  Outcome out;
  out.params = {{"n", n}};
  out.result = {{"count", r.count},
                {"prediction", r.prediction},
                {"ratio", r.ratio},
                {"ratio_2n", r.ratio_2n}};
  return out;
}

// ---------- verify ----------

json report_json(const verify::VerificationReport& rep) {
  json params = json::object(), measured = json::object();
  for (auto& [k, v] : rep.params) params[k] = v;
  for (auto& [k, v] : rep.measured) measured[k] = v;
  return {{"claim", rep.claim}, {"params", params},   {"measured", measured}, {"pass", rep.pass},
          {"margin", rep.margin}, {"note", rep.note}, {"reproduce", rep.reproduce}};
}

Outcome run_verify(const std::string& which, const json& p, std::uint64_t seed) {
  verify::VerificationReport rep;
  if (which == "necessity") {
    verify::NilseqSpec spec;
    spec.family = jreq(p, "family").get<std::string>();
    spec.alpha = jget(p, "alpha", 0.0);
    spec.beta = jget(p, "beta", 0.0);
    spec.gamma = jget(p, "gamma", 0.0);
    auto grid = jreq(p, "grid").get<std::vector<std::int64_t>>();
    rep = verify::check_necessity(static_cast<int>(jget_i(p, "s")), spec, grid, seed);
  } else if (which == "l1") {
    verify::L1Params lp;
    lp.N = jget_i(p, "N", 4096);
    lp.alpha = jget(p, "alpha", 0.0);
    lp.beta = jget(p, "beta", 0.0);
    lp.M = jget(p, "M", 10.0);
    rep = verify::check_l1_approx(static_cast<int>(jget_i(p, "item")), lp, jget(p, "eps"), seed);
  } else {  // pipeline
    verify::PhaseFamily fam;
    fam.kind = jreq(p, "kind").get<std::string>();
    fam.alpha = jget(p, "alpha", 0.0);
    fam.beta = jget(p, "beta", 0.0);
    fam.H_size = jget_i(p, "H", 0);
    rep = verify::run_gowers_pipeline(jget_i(p, "N"), fam, jget(p, "delta"), seed);
  }
  Outcome out;
  out.params = p;
  out.pass = rep.pass;
  out.result = report_json(rep);
  return out;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("GOWERSLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gowerslab: uniformity norms, bracket identities, nilpotent orbits and additive structure"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string precision = "float", output;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--precision", precision, "float|rational")->check(CLI::IsMember({"float", "rational"}));
  app.add_option("--output", output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "RNG seed for randomized inputs");
  app.add_option("--threads", threads, "worker threads (default: GOWERSLAB_THREADS or all cores)");

  // gowers
  auto* gowers_cmd = app.add_subcommand("gowers", "Gowers uniformity norms");
  gowers_cmd->require_subcommand(1)->fallthrough();
  GowersNormOpts gn;
  auto* gowers_norm = gowers_cmd->add_subcommand("norm", "U^k norm of a sequence");
  gowers_norm->fallthrough();
  gowers_norm->add_option("--domain", gn.domain, "interval|cyclic")->required();
  gowers_norm->add_option("--k", gn.k, "norm order, 1..4")->required();
  gowers_norm->add_option("--len", gn.len, "domain size (with --phase)");
  gowers_norm->add_option("--phase", gn.phase, "poly:c0,c1,... phase coefficients in cycles");
  gowers_norm->add_option("--input", gn.input, "CSV file index,re,im");
  gowers_norm->add_option("--method", gn.method, "direct|recursion|fft (cyclic only)");
  gowers_norm->add_option("--mtilde", gn.mtilde, "embedding modulus (interval only)");
  std::string gq_params = "{}";
  auto* gowers_quad = gowers_cmd->add_subcommand("quadruples", "correlated additive quadruples of a shift family");
  gowers_quad->fallthrough();
  gowers_quad->add_option("--params", gq_params, "JSON {N,H,alpha,beta,delta?,c?,nprime?}")->required();

  // bracket
  auto* bracket_cmd = app.add_subcommand("bracket", "bracket-polynomial identity oracles");
  bracket_cmd->require_subcommand(1)->fallthrough();
  std::string br_case, br_params = "{}";
  std::int64_t br_nmax = 1000;
  auto* bracket_verify = bracket_cmd->add_subcommand("verify", "check one identity family");
  bracket_verify->fallthrough();
  bracket_verify->add_option("--case", br_case, "key|i|ii|iii|iv|3brack|trilinear")->required();
  bracket_verify->add_option("--params", br_params, "JSON parameter overrides");
  bracket_verify->add_option("--n-max", br_nmax, "largest n (or trial count)");

  // nil
  auto* nil_cmd = app.add_subcommand("nil", "free nilpotent groups in Mal'cev coordinates");
  nil_cmd->require_subcommand(1)->fallthrough();
  std::string nil_group, nil_seq, nil_coord;
  std::int64_t nil_nmax = 100;
  auto* nil_eval = nil_cmd->add_subcommand("eval", "reduced coordinate along a polynomial orbit");
  nil_eval->fallthrough();
  nil_eval->add_option("--group", nil_group, "free2:<k>|free3")->required();
  nil_eval->add_option("--seq", nil_seq, "JSON orbit spec")->required();
  nil_eval->add_option("--coord", nil_coord, "coordinate name, e.g. t21 or t312")->required();
  nil_eval->add_option("--n-max", nil_nmax, "evaluate n = 1..n_max");
  std::string np_params = "{}";
  auto* nil_power = nil_cmd->add_subcommand("power-check", "g^n dual-path check (exact)");
  nil_power->fallthrough();
  nil_power->add_option("--params", np_params, "JSON {alpha,beta,gamma,n_max?}")->required();

  // equidist
  auto* eq_cmd = app.add_subcommand("equidist", "equidistribution and rational-structure diagnostics");
  eq_cmd->require_subcommand(1)->fallthrough();
  std::map<std::string, std::string> eq_params;
  for (const char* name : {"weyl", "test", "relation", "ratapprox"}) {
    auto* sub = eq_cmd->add_subcommand(name);
    sub->fallthrough();
    eq_params[name] = "{}";
    sub->add_option("--params", eq_params[name], "JSON parameters")->required();
  }

  // bohr
  auto* bohr_cmd = app.add_subcommand("bohr", "Bohr sets: build, regular radii, cutoff splitting");
  bohr_cmd->require_subcommand(1)->fallthrough();
  std::map<std::string, std::string> bohr_params;
  for (const char* name : {"build", "regular", "decompose"}) {
    auto* sub = bohr_cmd->add_subcommand(name);
    sub->fallthrough();
    bohr_params[name] = "{}";
    sub->add_option("--params", bohr_params[name], "JSON parameters")->required();
  }

  // sumset
  auto* sumset_cmd = app.add_subcommand("sumset", "sumset structure finders and additive energy");
  sumset_cmd->require_subcommand(1)->fallthrough();
  std::map<std::string, std::string> ss_params, ss_input;
  for (const char* name : {"lev", "bilinear", "energy"}) {
    auto* sub = sumset_cmd->add_subcommand(name);
    sub->fallthrough();
    ss_params[name] = "{}";
    sub->add_option("--input", ss_input[name], "input CSV")->required();
    sub->add_option("--params", ss_params[name], "JSON parameters");
  }

  // primes
  auto* primes_cmd = app.add_subcommand("primes", "prime 5-term progressions and their asymptotic");
  primes_cmd->require_subcommand(1)->fallthrough();
  std::int64_t pm_pmax = 0, pm_count_n = 0, pm_cmp_n = 0;
  auto* primes_gamma = primes_cmd->add_subcommand("gamma", "singular-series constant");
  primes_gamma->fallthrough();
  primes_gamma->add_option("--pmax", pm_pmax, "largest prime factor in the product")->required();
  auto* primes_count = primes_cmd->add_subcommand("count-ap", "count 5-term prime progressions in [n]");
  primes_count->fallthrough();
  primes_count->add_option("--n", pm_count_n)->required();
  auto* primes_cmp = primes_cmd->add_subcommand("compare", "count vs predicted density");
  primes_cmp->fallthrough();
  primes_cmp->add_option("--n", pm_cmp_n)->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "end-to-end verification reports");
  verify_cmd->require_subcommand(1)->fallthrough();
  std::map<std::string, std::string> vf_params;
  for (const char* name : {"necessity", "l1", "pipeline"}) {
    auto* sub = verify_cmd->add_subcommand(name);
    sub->fallthrough();
    vf_params[name] = "{}";
    sub->add_option("--params", vf_params[name], "JSON parameters")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  set_thread_budget(resolve_threads(threads));

  std::string command;
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (gowers_norm->parsed()) {
      command = "gowers norm";
      out = run_gowers_norm(gn, precision);
    } else if (gowers_quad->parsed()) {
      command = "gowers quadruples";
      out = run_gowers_quadruples(jparse(gq_params, "--params"));
    } else if (bracket_verify->parsed()) {
      command = "bracket verify";
      out = run_bracket_verify(br_case, jparse(br_params, "--params"), br_nmax, seed);
    } else if (nil_eval->parsed()) {
      command = "nil eval";
      out = run_nil_eval(nil_group, nil_seq, nil_coord, nil_nmax, precision);
      if (output.empty()) output = "csv";
    } else if (nil_power->parsed()) {
      command = "nil power-check";
      out = run_nil_power_check(jparse(np_params, "--params"));
    } else if (eq_cmd->parsed()) {
      for (auto& [name, text] : eq_params)
        if (eq_cmd->get_subcommand(name)->parsed()) {
          command = "equidist " + name;
          out = run_equidist(name, jparse(text, "--params"));
        }
    } else if (bohr_cmd->parsed()) {
      for (auto& [name, text] : bohr_params)
        if (bohr_cmd->get_subcommand(name)->parsed()) {
          command = "bohr " + name;
          out = run_bohr(name, jparse(text, "--params"));
          if (name == "build" && output.empty()) output = "csv";
        }
    } else if (sumset_cmd->parsed()) {
      for (auto& [name, text] : ss_params)
        if (sumset_cmd->get_subcommand(name)->parsed()) {
          command = "sumset " + name;
          out = run_sumset(name, ss_input[name], jparse(text, "--params"));
        }
    } else if (primes_gamma->parsed()) {
      command = "primes gamma";
      out = run_primes_gamma(pm_pmax);
    } else if (primes_count->parsed()) {
      command = "primes count-ap";
      out = run_primes_count(pm_count_n);
    } else if (primes_cmp->parsed()) {
      command = "primes compare";
      out = run_primes_compare(pm_cmp_n);
    } else if (verify_cmd->parsed()) {
      for (auto& [name, text] : vf_params)
        if (verify_cmd->get_subcommand(name)->parsed()) {
          command = "verify " + name;
          out = run_verify(name, jparse(text, "--params"), seed);
        }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  if (output.empty()) output = "json";
  if (output == "csv") {
    std::cout << (out.csv.empty() ? flatten_csv(out.result) : out.csv);
  } else {
    json env = {{"command", command},
                {"params", out.params},
                {"result", out.result},
                {"meta", {{"version", kVersion},
                          {"seed", seed},
                          {"precision", precision},
                          {"runtime_ms", ms}}}};
    std::cout << env.dump(2) << "\n";
  }
  return out.pass ? 0 : 1;
}
