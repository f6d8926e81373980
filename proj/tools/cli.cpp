#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpsharp/chebyshev.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/positivity.hpp"
#include "tpsharp/sequences.hpp"
#include "tpsharp/serialize.hpp"

namespace tpsharp::cli {

namespace {

using nlohmann::json;

struct Common {
  bool json_stdout = false;
  std::string out_path;
  std::uint64_t seed = 0;
  bool force_float = false;
  bool force_exact = false;
  double tol = kDefaultTau;
};

struct Outcome {
  int code = kHolds;
  json results = json::object();
  std::vector<std::string> summary;
  std::vector<std::string> warnings;
  std::string backend = "exact";
  std::string digest_input;
};

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Rational& fine_width() {
  static const Rational w(1, 1LL << 60);
  return w;
}

// "ck:<k>" or a rational / decimal literal (read exactly).
struct CArg {
  std::optional<Rational> value;
  int ck = 0;
  std::string text;

  RationalInterval interval(const Rational& width = fine_width()) const {
    return value ? RationalInterval::point(*value) : ck_enclosure(ck, width);
  }
};

CArg parse_c(const std::string& text) {
  CArg arg;
  arg.text = text;
  if (text.rfind("ck:", 0) == 0) {
    const std::string k = text.substr(3);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "bad constant '" + text + "', expected ck:<k>");
    }
    arg.ck = std::stoi(k);
  } else {
    arg.value = parse_rational(text);
  }
  return arg;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kHolds;
    case Verdict::FailsHypothesis: return kFails;
    case Verdict::Uncertain: return kUncertain;
  }
  return kUncertain;
}

int membership_code(Membership m) {
  switch (m) {
    case Membership::Yes: return kHolds;
    case Membership::No: return kFails;
    case Membership::Uncertain: return kUncertain;
  }
  return kUncertain;
}

// Failure is definite only when the minimal minor's sign is certain.
int scan_code(const PositivityResult& r, bool strict) {
  if (r.holds) return kHolds;
  const Sign s = r.scan.min_sign.verdict;
  if (s == Sign::Negative || (strict && s == Sign::Zero)) return kFails;
  return r.scan.uncertain > 0 ? kUncertain : kFails;
}

void require(bool given, const std::string& what) {
  if (!given) throw Error(ErrorCode::ParseError, "missing required option " + what);
}

std::string verdict_line(const Certificate& c) {
  std::string s = std::string(to_string(c.claim.kind)) + ": " + std::string(to_string(c.verdict));
  if (c.hypothesis) s += " (critical ratio " + c.hypothesis->critical_ratio.str() + ")";
  if (c.constant) s += ", constant [" + to_string(c.constant->lo()) + ", " + to_string(c.constant->hi()) + "]";
  return s;
}

struct MatrixInput {
  Matrix m;
  CheckOptions opts;
};

MatrixInput load_matrix(const std::string& path, const Common& common, Outcome& o) {
  const std::string text = read_file(path);
  o.digest_input += text;
  ParseOptions po;
  po.decimals_exact = common.force_exact;
  Parsed<Matrix> pm = parse_matrix(text, po);
  o.warnings.insert(o.warnings.end(), pm.warnings.begin(), pm.warnings.end());
  MatrixInput in{std::move(pm.value), {}};
  if (common.force_float) in.m = in.m.to_approx();
  in.opts.tau = common.tol;
  o.backend = in.m.is_exact() ? "exact" : "float";
  return in;
}

Scalar backend_scalar(const Rational& v, const Outcome& o) {
  return o.backend == "float" ? Scalar::approx(to_double(v)) : Scalar(v);
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string criterion;
  std::optional<std::size_t> k;
  std::optional<std::string> c;
  bool strict = false;
  bool contiguous = false;
};

Outcome cmd_check(const CheckArgs& a, const Common& common) {
  Outcome o;
  MatrixInput in = load_matrix(a.file, common, o);
  const Matrix& m = in.m;
  json& r = o.results;
  r["criterion"] = a.criterion;
  r["shape"] = {m.rows(), m.cols()};

  if (a.criterion == "tp2" || a.criterion == "stp2") {
    require(a.c.has_value(), "--c");
    const CArg c = parse_c(*a.c);
    const bool strict = a.criterion == "stp2";
    const RationalInterval ci = c.interval();
    const RatioReport rr = critical_ratio(m);
    const Membership mem = compare_ratio(rr.critical_ratio, ci, strict, in.opts.tau);
    r["ratio"] = to_json(rr);
    r["c"] = to_json(ci);
    r["membership"] = to_string(mem);
    o.code = membership_code(mem);
    o.summary.push_back("critical ratio " + rr.critical_ratio.str() + "; membership " + std::string(to_string(mem)));
  } else if (a.criterion == "tpk" || a.criterion == "stpk") {
    require(a.k.has_value(), "--k");
    const bool strict = a.criterion == "stpk";
    PositivityResult pr = strict ? is_stpk(m, *a.k, in.opts.tau) : is_tpk(m, *a.k, in.opts.tau);
    r["result"] = to_json(pr);
    o.code = scan_code(pr, strict);
    o.summary.push_back(a.criterion + " k=" + std::to_string(*a.k) + ": " + (pr.holds ? "true" : "false") +
                        " (" + std::to_string(pr.scan.total) + " minors, min " + pr.scan.min_value.str() + ")");
  } else if (a.criterion == "tp" || a.criterion == "stp") {
    const bool strict = a.criterion == "stp";
    PositivityResult pr = strict ? is_stp(m, a.contiguous, in.opts.tau) : is_tp(m, in.opts.tau);
    r["result"] = to_json(pr);
    o.code = scan_code(pr, strict);
    o.summary.push_back(a.criterion + ": " + (pr.holds ? "true" : "false") + " (" + std::to_string(pr.scan.total) +
                        " minors, min " + pr.scan.min_value.str() + ")");
  } else if (a.criterion == "theorem1" || a.criterion == "theorem2" || a.criterion == "theorem3" ||
             a.criterion == "theorem5") {
    Certificate cert;
    if (a.criterion == "theorem1") {
      cert = theorem1_check(m, a.strict, in.opts);
    } else if (a.criterion == "theorem2") {
      require(a.k.has_value(), "--k");
      cert = theorem2_check(m, *a.k, a.strict, in.opts);
    } else if (a.criterion == "theorem3") {
      cert = theorem3_check(m, in.opts);
    } else {
      cert = theorem5_check(m, in.opts);
    }
    r["certificate"] = to_json(cert);
    o.code = verdict_code(cert.verdict);
    if (cert.verdict == Verdict::Holds) {
      auto confirmed = cert.details.find("conclusion_confirmed");
      auto oracle = cert.details.find("oracle_holds");
      if ((confirmed != cert.details.end() && !confirmed->get<bool>() &&
           !cert.details.value("conclusion_uncertain", false)) ||
          (oracle != cert.details.end() && !oracle->get<bool>())) {
        o.code = kFails;
        o.warnings.emplace_back("conclusion not confirmed by the oracle");
      }
    }
    o.summary.push_back(verdict_line(cert));
    if (cert.details.contains("det")) o.summary.push_back("det " + cert.details["det"].get<std::string>());
  } else if (a.criterion == "theorem6") {
    require(a.c.has_value(), "--c");
    const CArg c = parse_c(*a.c);
    BoundResult b = c.value ? theorem6_bound(m, backend_scalar(*c.value, o), in.opts)
                            : theorem6_bound(m, c.interval(), in.opts);
    r["bound"] = to_json(b);
    o.code = verdict_code(b.certificate.verdict);
    if (o.code == kHolds && !b.certificate.details.value("conclusion_confirmed", false)) o.code = kFails;
    o.summary.push_back(verdict_line(b.certificate));
    o.summary.push_back("det " + b.certificate.details["det"].get<std::string>() + " >= bound " + b.bound.str());
  } else if (a.criterion == "chain") {
    require(a.c.has_value(), "--c");
    const CArg c = parse_c(*a.c);
    require(c.value.has_value(), "a numeric --c");
    auto entries = proof_chain_check(m, backend_scalar(*c.value, o), in.opts);
    json list = json::array();
    bool all = true;
    for (const auto& e : entries) {
      list.push_back(to_json(e));
      all = all && e.holds;
      o.summary.push_back(e.id + (e.index >= 0 ? "(" + std::to_string(e.index) + ")" : "") + ": margin " +
                          e.margin.str() + (e.holds ? "" : "  FAILS"));
    }
    r["chain"] = list;
    o.code = all ? kHolds : kFails;
  } else {
    throw Error(ErrorCode::ParseError, "unknown criterion '" + a.criterion + "'");
  }
  return o;
}

// ---- fseq -----------------------------------------------------------------

Outcome cmd_fseq(const std::string& c_text, int max_m, const Common& common) {
  Outcome o;
  o.digest_input = c_text + "|" + std::to_string(max_m);
  const CArg c = parse_c(c_text);
  json& r = o.results;
  r["c"] = c_text;
  r["M"] = max_m;
  const RationalInterval ci = c.interval();
  if (ci.is_point()) {
    Scalar cs(ci.lo());
    if (common.force_float) {
      cs = cs.to_approx();
      o.backend = "float";
    }
    FSequence f = f_recurrence(max_m, cs);
    r["values"] = to_json(f)["values"];
    for (std::size_t m = 0; m < f.values.size(); ++m) {
      o.summary.push_back("F_" + std::to_string(m) + " = " + f.values[m].str());
    }
  } else {
    r["c_enclosure"] = to_json(ci);
    auto vals = f_recurrence(max_m, ci);
    json list = json::array();
    for (std::size_t m = 0; m < vals.size(); ++m) {
      list.push_back(to_json(vals[m]));
      o.summary.push_back("F_" + std::to_string(m) + " in [" + to_string(vals[m].lo()) + ", " +
                          to_string(vals[m].hi()) + "]");
    }
    r["values"] = list;
    r["last_contains_zero"] = vals.back().contains_zero();
    r["last_width"] = to_double(vals.back().width());
  }
  return o;
}

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::optional<std::size_t> n;
  std::optional<std::string> phi;
  std::optional<std::string> safety;
  std::optional<std::string> eps;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::optional<std::string> c;
  std::string spread = "1";
  bool strict = false;
  std::string matrix_out;
};

double parse_double(const std::string& text) { return to_double(parse_rational(text)); }

void describe_matrix(const Matrix& m, Outcome& o, double tau) {
  o.results["matrix"] = to_json(m);
  if (m.is_exact()) {
    const Rational d = det_exact(m);
    o.results["det"] = to_string(d);
    o.results["det_sign"] = to_json(classify_exact(d));
  } else {
    FloatDet fd = det_float(m, tau);
    o.results["det"] = Scalar::approx(fd.value).str();
    o.results["det_sign"] = to_json(fd.sign);
    o.results["hadamard_bound"] = Scalar::approx(fd.hadamard_bound).str();
  }
  o.results["exact"] = m.is_exact();
  if (m.all_positive() && m.rows() >= 2 && m.cols() >= 2) {
    o.results["ratio"] = to_json(critical_ratio(m));
  }
  o.summary.push_back(matrix_to_csv(m));
  o.summary.push_back("det " + o.results["det"].get<std::string>() + " (" +
                      o.results["det_sign"]["verdict"].get<std::string>() + ")");
}

Outcome cmd_construct(const ConstructArgs& a, const Common& common) {
  Outcome o;
  json& r = o.results;
  r["family"] = a.family;
  Matrix m;
  if (a.family == "mn" || a.family == "tn") {
    require(a.n.has_value(), "--n");
    require(a.phi.has_value(), "--phi");
    const double phi = parse_double(*a.phi);
    o.backend = "float";
    r["n"] = *a.n;
    r["phi"] = Scalar::approx(phi).str();
    r["c"] = Scalar::approx(4 * std::cos(phi) * std::cos(phi)).str();
    if (a.family == "mn") {
      m = toeplitz_mn(*a.n, phi);
      if (phi > 0) r["det_closed_form"] = Scalar::approx(det_mn_closed(*a.n, phi)).str();
    } else {
      std::vector<double> eps;
      if (a.eps) {
        Parsed<std::vector<Scalar>> ps = parse_sequence(*a.eps);
        for (const auto& s : ps.value) eps.push_back(s.to_double());
      } else {
        eps = epsilon_cascade(*a.n, phi, a.safety ? parse_double(*a.safety) : 0.5);
      }
      json ej = json::array();
      for (double e : eps) ej.push_back(Scalar::approx(e).str());
      r["epsilons"] = ej;
      if (a.safety) r["safety"] = *a.safety;
      m = toeplitz_tn(*a.n, phi, eps);
    }
  } else if (a.family == "dn") {
    require(a.n.has_value(), "--n");
    require(a.p.has_value() && a.q.has_value(), "--p and --q");
    const Rational p = parse_rational(*a.p), q = parse_rational(*a.q);
    r["n"] = *a.n;
    r["p"] = to_string(p);
    r["q"] = to_string(q);
    m = hankel_dn(*a.n, Scalar(p), Scalar(q));
    if (common.force_float) m = m.to_approx();
  } else if (a.family == "tp2c") {
    require(a.n.has_value(), "--n");
    require(a.c.has_value(), "--c");
    RandomFactorPolicy policy;
    policy.seed = common.seed;
    policy.spread = parse_rational(a.spread);
    policy.strict = a.strict;
    const Rational c = parse_rational(*a.c);
    r["n"] = *a.n;
    r["c"] = to_string(c);
    r["spread"] = to_string(policy.spread);
    r["strict"] = a.strict;
    m = random_tp2c(*a.n, Scalar(c), policy);
    if (common.force_float) m = m.to_approx();
  } else {
    throw Error(ErrorCode::ParseError, "unknown family '" + a.family + "'");
  }
  if (!m.is_exact()) o.backend = "float";
  o.digest_input = json(r).dump();
  describe_matrix(m, o, common.tol);
  if (!a.matrix_out.empty()) {
    std::ofstream f(a.matrix_out);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + a.matrix_out + "'");
    const bool as_json = a.matrix_out.size() >= 5 && a.matrix_out.substr(a.matrix_out.size() - 5) == ".json";
    f << (as_json ? to_json(m).dump(2) + "\n" : matrix_to_csv(m));
    r["matrix_file"] = a.matrix_out;
  }
  return o;
}

// ---- sharpness ------------------------------------------------------------

Outcome cmd_sharpness(int k, const std::string& c_text, const Common& common) {
  Outcome o;
  o.digest_input = std::to_string(k) + "|" + c_text;
  const Rational c = parse_rational(c_text);
  json& r = o.results;
  r["k"] = k;
  r["c"] = to_string(c);
  if (k >= 2) r["ck"] = to_json(ck_enclosure(k, fine_width()));
  WitnessOptions wo;
  wo.tau = common.tol;
  WitnessResult t = toeplitz_witness(k, Scalar(c), wo);
  WitnessResult h = hankel_witness(k, Scalar(c), wo);
  r["toeplitz"] = to_json(t);
  r["hankel"] = to_json(h);
  o.backend = "mixed";
  const bool ok = t.membership == Membership::Yes && t.det_sign.verdict == Sign::Negative &&
                  h.membership == Membership::Yes && h.det_sign.verdict == Sign::Negative;
  o.code = ok ? kHolds : kFails;
  o.summary.push_back("toeplitz witness: det " + t.det.str() + ", critical ratio " + t.ratio.critical_ratio.str());
  o.summary.push_back("hankel witness: p = " + h.params["p"].get<std::string>() + ", q = " +
                      h.params["q"].get<std::string>() + ", det " + h.det.str());
  return o;
}

// ---- sequence -------------------------------------------------------------

struct SequenceArgs {
  std::string file;
  std::string check;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
};

Outcome cmd_sequence(const SequenceArgs& a, const Common& common) {
  Outcome o;
  const std::string text = read_file(a.file);
  o.digest_input = text;
  ParseOptions po;
  po.decimals_exact = common.force_exact;
  Parsed<std::vector<Scalar>> ps = parse_sequence(text, po);
  o.warnings = ps.warnings;
  std::vector<Scalar> seq = std::move(ps.value);
  if (common.force_float) {
    for (auto& s : seq) s = s.to_approx();
  }
  o.backend = (!seq.empty() && seq.front().is_exact()) ? "exact" : "float";
  CheckOptions opts;
  opts.tau = common.tol;
  json& r = o.results;
  r["check"] = a.check;
  r["length"] = seq.size();
  const std::size_t default_k = seq.empty() ? 0 : (seq.size() - 1) / 2;

  if (a.check == "pfm") {
    require(a.m.has_value(), "--m");
    PfmReport rep = pfm_check(seq, *a.m, a.n.value_or(default_truncation(seq.size())));
    r["report"] = to_json(rep);
    o.code = scan_code(PositivityResult{rep.holds, rep.scan}, false);
    o.summary.push_back("PF_" + std::to_string(rep.m) + " on the " + std::to_string(rep.n) + "x" +
                        std::to_string(rep.n) + " section: " + (rep.holds ? "true" : "false"));
  } else if (a.check == "hutchinson") {
    HutchinsonReport rep = hutchinson_ratio(seq);
    r["report"] = to_json(rep);
    o.code = rep.ner_holds ? kHolds : kFails;
    o.summary.push_back("min ratio " + rep.ratio.str() + " at n = " + std::to_string(rep.argmin) +
                        (rep.pf_infinity_implied ? "; >= 4, so the sequence is PF_infinity" : "; below 4"));
  } else if (a.check == "corollary5") {
    require(a.m.has_value(), "--m");
    Certificate cert = corollary5_check(seq, *a.m, a.n, opts);
    r["certificate"] = to_json(cert);
    o.code = verdict_code(cert.verdict);
    if (o.code == kHolds && !cert.details.value("oracle_holds", true)) o.code = kFails;
    o.summary.push_back(verdict_line(cert));
  } else if (a.check == "moment") {
    auto entries = hankel_moment_check(seq, a.k.value_or(default_k), common.tol);
    json list = json::array();
    bool all_pos = true, any_unc = false;
    for (const auto& e : entries) {
      list.push_back(to_json(e));
      all_pos = all_pos && e.sign.verdict == Sign::Positive;
      any_unc = any_unc || e.sign.verdict == Sign::Uncertain;
      o.summary.push_back("order " + std::to_string(e.order) + ": det " + e.det.str() + " (" +
                          std::string(to_string(e.sign.verdict)) + ")");
    }
    r["determinants"] = list;
    r["all_positive"] = all_pos;
    o.code = all_pos ? kHolds : (any_unc ? kUncertain : kFails);
  } else if (a.check == "corollary3") {
    Certificate cert = corollary3_moment_check(seq, a.k.value_or(default_k), opts);
    r["certificate"] = to_json(cert);
    o.code = verdict_code(cert.verdict);
    if (o.code == kHolds && !cert.details.value("oracle_holds", true)) o.code = kFails;
    o.summary.push_back(verdict_line(cert));
  } else {
    throw Error(ErrorCode::ParseError, "unknown check '" + a.check + "'");
  }
  return o;
}

// ---- constants ------------------------------------------------------------

Outcome cmd_constants(const std::string& width_text, int kmax) {
  Outcome o;
  o.digest_input = width_text + "|" + std::to_string(kmax);
  const Rational width = parse_rational(width_text);
  json ck = json::object();
  for (int k = 2; k <= kmax; ++k) {
    RationalInterval e = ck_enclosure(k, width);
    ck["ck:" + std::to_string(k)] = to_json(e);
    o.summary.push_back("c_" + std::to_string(k) + " in [" + Scalar(e.lo()).to_approx().str() + ", " +
                        Scalar(e.hi()).to_approx().str() + "]");
  }
  o.results["width"] = to_string(width);
  o.results["ck"] = ck;
  const RationalInterval ct = constant_c_tilde(width);
  const RationalInterval d = constant_d(width);
  o.results["c_tilde"] = to_json(ct);
  o.results["d"] = to_json(d);
  o.summary.push_back("c~ in [" + Scalar(ct.lo()).to_approx().str() + ", " + Scalar(ct.hi()).to_approx().str() + "]");
  o.summary.push_back("d in [" + Scalar(d.lo()).to_approx().str() + ", " + Scalar(d.hi()).to_approx().str() + "]");
  return o;
}

int error_code_for(ErrorCode c) {
  return (c == ErrorCode::HypothesisUnmet || c == ErrorCode::CNotBelowCk) ? kFails : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ratio criteria for total positivity: checks, constants, constructions"};
  app.name(args.empty() ? "tpsharp" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_stdout, "Print the JSON report to standard output");
  app.add_option("--out", common.out_path, "Write the JSON report to this path");
  app.add_option("--seed", common.seed, "Seed for randomized commands (default 0)");
  auto* fl = app.add_flag("--float", common.force_float, "Use the binary64 backend");
  app.add_flag("--exact", common.force_exact, "Read decimal literals as exact rationals")->excludes(fl);
  app.add_option("--tol", common.tol, "Relative sign tolerance for the float backend")->check(CLI::PositiveNumber);

  CheckArgs check;
  auto* sc = app.add_subcommand("check", "Check a matrix against a criterion");
  sc->add_option("file", check.file, "Matrix file (CSV or JSON)")->required();
  sc->add_option("--criterion", check.criterion)
      ->required()
      ->check(CLI::IsMember({"tp2", "stp2", "tpk", "stpk", "tp", "stp", "theorem1", "theorem2", "theorem3",
                             "theorem5", "theorem6", "chain"}));
  sc->add_option("--k", check.k);
  sc->add_option("--c", check.c, "Rational value or ck:<k>");
  sc->add_flag("--strict", check.strict);
  sc->add_flag("--contiguous", check.contiguous, "Contiguous minors only (stp)");

  std::string fseq_c;
  int fseq_m = 0;
  auto* sf = app.add_subcommand("fseq", "Table of F_0 .. F_M at c");
  sf->add_option("--c", fseq_c, "Rational value or ck:<k>")->required();
  sf->add_option("--M", fseq_m)->required()->check(CLI::NonNegativeNumber);

  ConstructArgs cons;
  auto* sk = app.add_subcommand("construct", "Build an explicit matrix family");
  sk->add_option("family", cons.family)->required()->check(CLI::IsMember({"mn", "tn", "dn", "tp2c"}));
  sk->add_option("--n", cons.n);
  sk->add_option("--phi", cons.phi);
  sk->add_option("--safety", cons.safety);
  sk->add_option("--eps", cons.eps, "Comma-separated off-band entries");
  sk->add_option("--p", cons.p);
  sk->add_option("--q", cons.q);
  sk->add_option("--c", cons.c);
  sk->add_option("--spread", cons.spread);
  sk->add_flag("--strict", cons.strict);
  sk->add_option("--matrix-out", cons.matrix_out, "Write the matrix (CSV, or JSON for *.json)");

  int sharp_k = 0;
  std::string sharp_c;
  auto* ss = app.add_subcommand("sharpness", "Witnesses in TP2(c) with negative determinant, c < c_k");
  ss->add_option("--k", sharp_k)->required();
  ss->add_option("--c", sharp_c)->required();

  SequenceArgs seqa;
  auto* sq = app.add_subcommand("sequence", "Sequence-level checks");
  sq->add_option("file", seqa.file)->required();
  sq->add_option("--check", seqa.check)
      ->required()
      ->check(CLI::IsMember({"pfm", "hutchinson", "corollary5", "moment", "corollary3"}));
  sq->add_option("--m", seqa.m);
  sq->add_option("--N", seqa.n);
  sq->add_option("--k", seqa.k);

  std::string width = "1/1000000000000";
  int kmax = 20;
  auto* st = app.add_subcommand("constants", "Enclosures of c_k, c~ and d");
  st->add_option("--width", width);
  st->add_option("--kmax", kmax)->check(CLI::Range(2, 200));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string command = "?";
  try {
    if (sc->parsed()) {
      command = "check";
      o = cmd_check(check, common);
    } else if (sf->parsed()) {
      command = "fseq";
      o = cmd_fseq(fseq_c, fseq_m, common);
    } else if (sk->parsed()) {
      command = "construct";
      o = cmd_construct(cons, common);
    } else if (ss->parsed()) {
      command = "sharpness";
      o = cmd_sharpness(sharp_k, sharp_c, common);
    } else if (sq->parsed()) {
      command = "sequence";
      o = cmd_sequence(seqa, common);
    } else if (st->parsed()) {
      command = "constants";
      o = cmd_constants(width, kmax);
    }
  } catch (const Error& e) {
    o.code = error_code_for(e.code());
    json ej = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (e.position()) ej["position"] = {e.position()->first, e.position()->second};
    o.results["error"] = ej;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> echo(args.begin() + (args.empty() ? 0 : 1), args.end());
  if (o.digest_input.empty()) {
    for (const auto& a : echo) o.digest_input += a + '\0';
  }
  json report = {{"command", command},
                 {"argv", echo},
                 {"input_digest", "fnv1a64:" + fnv1a64(o.digest_input)},
                 {"backend", o.backend},
                 {"seed", common.seed},
                 {"results", o.results},
                 {"warnings", o.warnings},
                 {"exit_code", o.code},
                 {"timing_ms", ms}};

  for (const auto& w : o.warnings) err << "warning: " << w << "\n";
  if (!common.out_path.empty()) {
    std::ofstream f(common.out_path);
    if (!f) {
      err << "error: cannot write '" << common.out_path << "'\n";
      return kInputError;
    }
    f << report.dump(2) << "\n";
  }
  if (common.json_stdout) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& line : o.summary) {
      out << line;
      if (line.empty() || line.back() != '\n') out << "\n";
    }
    if (o.results.contains("error")) {
      const json& e = o.results["error"];
      err << "error " << e["code"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
    }
  }
  return o.code;
}

}  // namespace tpsharp::cli
