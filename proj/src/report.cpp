#include "sonc/report.hpp"

#include "sonc/errors.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sonc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

bool looks_like_file(const std::string& input) {
  if (input.size() > 5 && input.substr(input.size() - 5) == ".json") return true;
  return false;
}

Exponent parse_exponent_list(const std::string& text, int n) {
  Exponent e;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) e.push_back(std::stoi(part));
  if (static_cast<int>(e.size()) != n)
    throw InvalidInput("target exponent has " + std::to_string(e.size()) + " entries, expected " +
                       std::to_string(n));
  return e;
}

std::optional<Triangulation> load_triangulation(const PipelineOptions& opts) {
  if (!opts.triangulation_file) return std::nullopt;
  return triangulation_from_json(read_json_file(*opts.triangulation_file));
}

WeightOverrides load_weight_overrides(const std::string& path) {
  WeightOverrides out;
  nlohmann::json j = read_json_file(path);
  for (const auto& entry : j) {
    Exponent e = entry.at("exp").get<Exponent>();
    std::map<int, Rational> per_piece;
    for (const auto& w : entry.at("weights")) {
      int piece = w.at(0).get<int>();
      Rational val = w.at(1).is_string() ? parse_rational(w.at(1).get<std::string>())
                                         : rational_from_double(w.at(1).get<double>());
      per_piece[piece] = val;
    }
    out[e] = std::move(per_piece);
  }
  return out;
}

}  // namespace

std::string format_sig6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

ConstrainedProblem load_problem(const std::string& input, const PipelineOptions& opts) {
  ConstrainedProblem p;
  if (looks_like_file(input)) {
    nlohmann::json j = read_json_file(input);
    int n = j.at("n").get<int>();
    p.f = Polynomial::parse(j.at("f").get<std::string>(), n);
    if (j.contains("constraints"))
      for (const auto& g : j["constraints"])
        p.constraints.push_back(Polynomial::parse(g.get<std::string>(), n));
  } else {
    if (opts.n <= 0) throw InvalidInput("--n is required for inline polynomial input");
    p.f = Polynomial::parse(input, opts.n);
  }
  if (opts.scale_exponents > 1) {
    p.f = p.f.scale_exponents(opts.scale_exponents);
    for (auto& g : p.constraints) g = g.scale_exponents(opts.scale_exponents);
  }
  return p;
}

RunReport cmd_analyze(const std::string& input, const PipelineOptions& opts) {
  RunReport rep;
  rep.command = "analyze";
  ConstrainedProblem p = load_problem(input, opts);
  if (p.f.is_zero()) {
    rep.payload = {{"status", "zero polynomial"}};
    rep.human = "zero polynomial";
    return rep;
  }
  SupportAnalysis a = analyze_support(p.f);
  auto exps = [](const std::vector<Exponent>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : v) arr.push_back(e);
    return arr;
  };
  rep.payload["f"] = p.f.render();
  rep.payload["vertices"] = exps(a.vertices);
  rep.payload["delta_A"] = exps(a.delta_a);
  rep.payload["delta_f"] = exps(a.delta_f);
  rep.payload["clubsuit"] = a.clubsuit_ok;
  rep.payload["dimension"] = a.dimension;
  std::string st_status;
  try {
    STForm st = st_form(p.f);
    if (st.delta_f_tails().empty())
      st_status = "sum of monomial squares";
    else
      st_status = "ST-polynomial, " + std::to_string(st.delta_f_tails().size()) + " tail term" +
                  (st.delta_f_tails().size() == 1 ? "" : "s");
  } catch (const NotSTForm& e) {
    st_status = std::string("not ST: ") + e.what();
  }
  rep.payload["st_status"] = st_status;
  std::ostringstream h;
  h << "V(A): " << a.vertices.size() << " vertices, Delta(A): " << a.delta_a.size()
    << ", Delta(f): " << a.delta_f.size() << "\n"
    << "clubsuit: " << (a.clubsuit_ok ? "ok" : "violated") << "\n"
    << st_status;
  rep.human = h.str();
  return rep;
}

namespace {

void attach_oracle(RunReport& rep, const ConstrainedProblem& p, double bound,
                   const PipelineOptions& opts) {
  if (!opts.validate) return;
  Box box = default_box(p.n());
  bool ok = validate_bound(p.f, p.constraints, bound, box, opts.oracle_samples, opts.seed);
  SampleReport sr = sample_min(p.f, box, opts.oracle_samples, opts.seed, p.constraints);
  rep.payload["oracle"] = {{"validated", ok},
                           {"best_sample_value", sr.best_value},
                           {"best_point", sr.best_point},
                           {"samples", sr.samples}};
  rep.human += "\noracle: " + std::string(ok ? "validated" : "CONTRADICTED") +
               " (best sample " + format_sig6(sr.best_value) + ")";
  if (!ok) rep.exit_code = 1;
}

void write_cert_file(const PipelineOptions& opts, const nlohmann::json& envelope) {
  if (!opts.cert_out) return;
  std::ofstream out(*opts.cert_out);
  if (!out) throw InvalidInput("cannot write certificate file: " + *opts.cert_out);
  out << envelope.dump(2) << "\n";
}

}  // namespace

RunReport cmd_minimize(const std::string& input, const PipelineOptions& opts) {
  auto t0 = Clock::now();
  RunReport rep;
  rep.command = "minimize";
  ConstrainedProblem p = load_problem(input, opts);
  if (!p.constraints.empty())
    throw InvalidInput("minimize expects an unconstrained problem; use minimize-constrained");
  rep.payload["f"] = p.f.render();
  if (p.f.is_zero()) {
    rep.payload["bound"] = 0.0;
    rep.payload["program_kind"] = "trivial";
    rep.human = "bound: 0 (zero polynomial)";
    return rep;
  }
  std::optional<Exponent> target;
  if (opts.target) target = parse_exponent_list(*opts.target, p.n());

  bool heuristic = false;
  double bound = 0.0;
  bool force_cover = opts.triangulation_file.has_value() || opts.weights != "equal";
  try {
    if (force_cover) throw NotSimplex("cover route requested explicitly");
    SoncBound sb = f_sonc(p.f, target);
    bound = sb.bound;
    rep.payload["bound"] = sb.bound;
    rep.payload["m_star"] = sb.m_star;
    rep.payload["target"] = sb.target;
    rep.payload["program_kind"] = "unconstrained-gp";
    rep.payload["heuristic"] = false;
    rep.payload["solver"] = {{"iterations", sb.solve.iterations},
                             {"kkt_residual", sb.solve.kkt_residual}};
    bool ok = verify_certificate(p.f, sb.cert, 1e-6);
    rep.payload["certificate"] = certificate_to_json(sb.cert);
    rep.payload["certificate_verified"] = ok;
    rep.human = "bound: " + format_sig6(sb.bound) + "\nprogram: unconstrained-gp\ncertificate: " +
                std::to_string(sb.cert.circuits.size()) + " circuit(s), " +
                std::to_string(sb.cert.residual_squares.size()) + " residual square(s)" +
                (ok ? " (verified)" : " (FAILED VERIFICATION)");
    if (!ok) rep.exit_code = 1;
    write_cert_file(opts, {{"problem", {{"f", p.f.render()}, {"n", p.n()}}},
                           {"certificate", certificate_to_json(sb.cert)}});
  } catch (const NotSTForm&) {
    // Cover route.
    std::optional<Triangulation> tri = load_triangulation(opts);
    WeightOverrides overrides;
    int budget = 0;
    if (opts.weights.rfind("optimize:", 0) == 0) {
      budget = std::stoi(opts.weights.substr(9));
    } else if (opts.weights != "equal") {
      overrides = load_weight_overrides(opts.weights);
    }
    CoverDecomposition dec = decompose(p.f, tri, overrides);
    std::optional<std::vector<Exponent>> targets;
    if (target) targets = std::vector<Exponent>(dec.pieces.size(), *target);
    if (budget > 0) {
      dec = improve_weights(p.f, dec, targets, budget);
      heuristic = true;
    }
    CoverBound cb = bound_via_cover(p.f, dec, targets);
    if (!cb.feasible) throw SolverFailure("cover bound failed: " + cb.message);
    bound = cb.lower_bound ? *cb.lower_bound : -std::numeric_limits<double>::infinity();
    rep.payload["program_kind"] = "cover";
    rep.payload["heuristic"] = heuristic;
    rep.payload["pieces"] = nlohmann::json::array();
    for (std::size_t i = 0; i < dec.pieces.size(); ++i)
      rep.payload["pieces"].push_back({{"polynomial", dec.pieces[i].render()},
                                       {"target", cb.piece_targets[i]},
                                       {"m_star", cb.piece_m[i]}});
    nlohmann::json reqs = nlohmann::json::array();
    for (const auto& [e, v] : cb.coefficient_requirements) reqs.push_back({{"exp", e}, {"required", v}});
    rep.payload["coefficient_requirements"] = reqs;
    if (cb.lower_bound) rep.payload["bound"] = *cb.lower_bound;
    bool all_ok = true;
    nlohmann::json certs = nlohmann::json::array();
    for (std::size_t i = 0; i < cb.certificates.size(); ++i) {
      bool ok = verify_certificate(dec.pieces[i], cb.certificates[i], 1e-6);
      all_ok = all_ok && ok;
      certs.push_back(certificate_to_json(cb.certificates[i]));
    }
    rep.payload["certificates"] = certs;
    rep.payload["certificate_verified"] = all_ok;
    std::ostringstream h;
    h << "bound: " << (cb.lower_bound ? format_sig6(*cb.lower_bound) : std::string("-inf"))
      << "\nprogram: cover (" << dec.pieces.size() << " pieces)\npiece m*:";
    for (double m : cb.piece_m) h << " " << format_sig6(m);
    if (!cb.lower_bound) {
      h << "\ncoefficient requirements:";
      for (const auto& [e, v] : cb.coefficient_requirements)
        h << " " << exponent_to_string(e) << " >= " << format_sig6(v);
    }
    h << "\ncertificates: " << (all_ok ? "verified" : "FAILED VERIFICATION");
    rep.human = h.str();
    if (!all_ok) rep.exit_code = 1;
    nlohmann::json envelope = {{"problem", {{"f", p.f.render()}, {"n", p.n()}}},
                               {"piece_certificates", certs}};
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& piece : dec.pieces) pieces.push_back(piece.render());
    envelope["pieces"] = pieces;
    write_cert_file(opts, envelope);
  }
  attach_oracle(rep, p, bound, opts);
  rep.payload["wall_time_s"] = seconds_since(t0);
  rep.human += "\nwall time: " + format_sig6(seconds_since(t0)) + " s";
  return rep;
}

RunReport cmd_minimize_constrained(const std::string& input, const PipelineOptions& opts) {
  auto t0 = Clock::now();
  RunReport rep;
  rep.command = "minimize-constrained";
  ConstrainedProblem p = load_problem(input, opts);
  rep.payload["f"] = p.f.render();
  nlohmann::json gj = nlohmann::json::array();
  for (const auto& g : p.constraints) gj.push_back(g.render());
  rep.payload["constraints"] = gj;

  ConstrainedStrategy strat = ConstrainedStrategy::Auto;
  if (opts.strategy == "gp") strat = ConstrainedStrategy::Gp;
  else if (opts.strategy == "snp") strat = ConstrainedStrategy::Snp;
  else if (opts.strategy != "auto") throw InvalidInput("unknown strategy: " + opts.strategy);

  double bound = 0.0;
  try {
    ConstrainedBound cb = lower_bound(p, strat);
    bound = cb.bound;
    rep.payload["bound"] = cb.bound;
    rep.payload["gamma"] = cb.gamma;
    rep.payload["mu"] = cb.mu;
    rep.payload["program_kind"] = cb.program_kind;
    rep.payload["heuristic"] = cb.heuristic;
    if (cb.program_solve)
      rep.payload["solver"] = {{"iterations", cb.program_solve->iterations},
                               {"kkt_residual", cb.program_solve->kkt_residual},
                               {"status", to_string(cb.program_solve->status)}};
    std::ostringstream h;
    h << "bound: " << format_sig6(cb.bound) << "\nprogram: " << cb.program_kind
      << (cb.heuristic ? " (heuristic)" : "") << "\ngamma: " << format_sig6(cb.gamma) << "\nmu:";
    for (double m : cb.mu) h << " " << format_sig6(m);
    if (cb.certificate_run) {
      bool ok = verify_certificate(assemble_g(p, cb.mu), cb.certificate_run->cert, 1e-6);
      rep.payload["certificate"] = certificate_to_json(cb.certificate_run->cert);
      rep.payload["certificate_verified"] = ok;
      h << "\ncertificate for G(mu): " << (ok ? "verified" : "FAILED VERIFICATION");
      if (!ok) rep.exit_code = 1;
      nlohmann::json envelope = {{"problem", {{"f", p.f.render()}, {"constraints", gj}, {"n", p.n()}}},
                                 {"mu", cb.mu},
                                 {"certificate", certificate_to_json(cb.certificate_run->cert)}};
      write_cert_file(opts, envelope);
    }
    rep.human = h.str();
  } catch (const NotSimplex& e) {
    if (!opts.cover_fallback) throw;
    std::optional<Triangulation> tri = load_triangulation(opts);
    ConstrainedCoverBound cb = constrained_cover_bound(p, tri);
    bound = cb.bound;
    rep.payload["bound"] = cb.bound;
    rep.payload["gamma"] = cb.gamma;
    rep.payload["mu"] = cb.mu;
    rep.payload["program_kind"] = cb.program_kind;
    rep.payload["heuristic"] = false;
    rep.payload["piece_m"] = cb.piece_m;
    rep.payload["solver"] = {{"iterations", cb.solve.iterations},
                             {"kkt_residual", cb.solve.kkt_residual},
                             {"status", to_string(cb.solve.status)}};
    std::ostringstream h;
    h << "bound: " << format_sig6(cb.bound) << "\nprogram: " << cb.program_kind << "\npiece m*:";
    for (double m : cb.piece_m) h << " " << format_sig6(m);
    h << "\nmu:";
    for (double m : cb.mu) h << " " << format_sig6(m);
    Polynomial g_star = assemble_g(p, cb.mu);
    if (cb.certificate) {
      bool ok = verify_certificate(g_star, *cb.certificate, 1e-6);
      rep.payload["certificate"] = certificate_to_json(*cb.certificate);
      rep.payload["certificate_verified"] = ok;
      h << "\ncertificate for G(mu): " << (ok ? "verified" : "FAILED VERIFICATION");
      if (!ok) rep.exit_code = 1;
      write_cert_file(opts, {{"problem", {{"f", p.f.render()}, {"constraints", gj}, {"n", p.n()}}},
                             {"mu", cb.mu},
                             {"certificate", certificate_to_json(*cb.certificate)}});
    } else if (!cb.piece_certificates.empty()) {
      bool ok = true;
      nlohmann::json certs = nlohmann::json::array();
      nlohmann::json pieces = nlohmann::json::array();
      for (std::size_t i = 0; i < cb.piece_certificates.size(); ++i) {
        ok = ok && verify_certificate(cb.cert_pieces[i], cb.piece_certificates[i], 1e-6);
        certs.push_back(certificate_to_json(cb.piece_certificates[i]));
        pieces.push_back(cb.cert_pieces[i].render());
      }
      rep.payload["piece_certificates"] = certs;
      rep.payload["certificate_verified"] = ok;
      h << "\npiece certificates for G(mu): " << (ok ? "verified" : "FAILED VERIFICATION");
      if (!ok) rep.exit_code = 1;
    }
    rep.human = h.str();
    (void)e;
  }
  attach_oracle(rep, p, bound, opts);
  rep.payload["wall_time_s"] = seconds_since(t0);
  rep.human += "\nwall time: " + format_sig6(seconds_since(t0)) + " s";
  return rep;
}

RunReport cmd_verify(const std::string& cert_file, const std::string& problem_file,
                     const PipelineOptions& opts) {
  RunReport rep;
  rep.command = "verify";
  nlohmann::json env = read_json_file(cert_file);
  PipelineOptions popts = opts;
  ConstrainedProblem p = load_problem(problem_file, popts);

  bool ok = false;
  if (env.contains("certificate")) {
    SoncCertificate cert = certificate_from_json(env.at("certificate"));
    Polynomial subject = p.f;
    if (env.contains("mu")) {
      std::vector<double> mu = env["mu"].get<std::vector<double>>();
      subject = assemble_g(p, mu);
    }
    ok = verify_certificate(subject, cert, 1e-6);
  } else if (env.contains("piece_certificates")) {
    ok = true;
    Polynomial sum(p.n());
    auto pieces = env.at("pieces");
    auto certs = env.at("piece_certificates");
    for (std::size_t i = 0; i < certs.size(); ++i) {
      Polynomial piece = Polynomial::parse(pieces.at(i).get<std::string>(), p.n());
      sum = sum + piece;
      if (!verify_certificate(piece, certificate_from_json(certs[i]), 1e-6)) ok = false;
    }
    if (!(sum == p.f)) ok = false;  // pieces must reassemble the problem polynomial
  } else {
    throw InvalidInput("certificate file has neither 'certificate' nor 'piece_certificates'");
  }
  rep.payload["verified"] = ok;
  rep.human = ok ? "certificate verified" : "certificate verification FAILED";
  rep.exit_code = ok ? 0 : 1;
  return rep;
}

}  // namespace sonc
