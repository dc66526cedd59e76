#include "sonc/cover.hpp"

#include "sonc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace sonc {

namespace {

bool point_in_simplex(const Exponent& e, const std::vector<Exponent>& simplex) {
  auto lam = barycentric_unclamped(e, simplex);
  if (!lam) return false;
  for (const auto& l : *lam)
    if (l < 0) return false;
  return true;
}

std::vector<Exponent> simplex_points(const Triangulation& tri, int s) {
  std::vector<Exponent> out;
  for (int idx : tri.simplices[s]) out.push_back(tri.points[idx]);
  return out;
}

Exponent origin_exponent(int n) { return Exponent(static_cast<std::size_t>(n), 0); }

}  // namespace

CoverDecomposition decompose(const Polynomial& f, const std::optional<Triangulation>& tri_in,
                             const WeightOverrides& overrides) {
  if (f.is_zero()) throw InvalidInput("decompose: zero polynomial");
  const int n = f.n();
  std::vector<Exponent> squares;
  std::set<Exponent> square_set;
  for (const auto& [e, c] : f.terms()) {
    if (is_monomial_square(Term{c, e})) {
      squares.push_back(e);
      square_set.insert(e);
    }
  }
  if (squares.empty()) throw DegenerateSupport("no monomial squares to triangulate");

  CoverDecomposition dec;
  if (tri_in) {
    dec.tri = *tri_in;
    for (const auto& pt : dec.tri.points)
      if (!square_set.count(pt))
        throw InvalidInput("triangulation point " + exponent_to_string(pt) +
                           " is not a monomial-square exponent of the polynomial");
    for (const auto& cell : dec.tri.simplices) {
      std::vector<Exponent> verts;
      for (int i : cell) verts.push_back(dec.tri.points.at(i));
      barycentric(verts.front(), verts);  // throws DegenerateSimplex on dependence
    }
  } else {
    dec.tri = triangulate_squares(squares);
  }

  const int k = static_cast<int>(dec.tri.simplices.size());
  std::vector<std::set<Exponent>> vertex_sets(k);
  for (int s = 0; s < k; ++s)
    for (int idx : dec.tri.simplices[s]) vertex_sets[s].insert(dec.tri.points[idx]);

  for (const auto& [e, c] : f.terms()) {
    std::vector<int> holders;
    if (square_set.count(e)) {
      for (int s = 0; s < k; ++s)
        if (vertex_sets[s].count(e)) holders.push_back(s);
    }
    if (holders.empty()) {
      for (int s = 0; s < k; ++s)
        if (point_in_simplex(e, simplex_points(dec.tri, s))) holders.push_back(s);
    }
    if (holders.empty())
      throw TailNotCovered("exponent " + exponent_to_string(e) + " lies in no simplex");

    CoverDecomposition::SplitEntry entry;
    entry.exp = e;
    entry.piece_indices = holders;
    auto ov = overrides.find(e);
    if (ov != overrides.end()) {
      Rational total(0);
      for (int s : holders) {
        auto it = ov->second.find(s);
        Rational w = it == ov->second.end() ? Rational(0) : it->second;
        if (w != 0 && ((w > 0) != (c > 0)))
          throw InvalidInput("weight override flips the sign of " + exponent_to_string(e));
        entry.weights.push_back(w);
        total += w;
      }
      if (total != c)
        throw InvalidInput("weight override for " + exponent_to_string(e) +
                           " does not sum to the coefficient");
    } else {
      Rational share = c / Rational(static_cast<int>(holders.size()));
      entry.weights.assign(holders.size(), share);
    }
    dec.splits.push_back(std::move(entry));
  }

  dec.pieces.assign(k, Polynomial(n));
  for (const auto& entry : dec.splits)
    for (std::size_t i = 0; i < entry.piece_indices.size(); ++i)
      dec.pieces[entry.piece_indices[i]].add_term(entry.exp, entry.weights[i]);
  for (int s = 0; s < k; ++s)
    if (dec.pieces[s].is_zero())
      throw DegenerateSupport("simplex " + std::to_string(s) + " received no terms");
  return dec;
}

namespace {

std::vector<Exponent> default_targets(const CoverDecomposition& dec, int n) {
  std::vector<Exponent> targets;
  Exponent origin = origin_exponent(n);
  for (std::size_t s = 0; s < dec.tri.simplices.size(); ++s) {
    std::vector<Exponent> verts = simplex_points(dec.tri, static_cast<int>(s));
    std::sort(verts.begin(), verts.end(), GradedLexLess{});
    bool has_origin = std::find(verts.begin(), verts.end(), origin) != verts.end();
    targets.push_back(has_origin ? origin : verts.front());
  }
  return targets;
}

}  // namespace

CoverBound bound_via_cover(const Polynomial& f, const CoverDecomposition& dec,
                           const std::optional<std::vector<Exponent>>& targets_in,
                           const SolverSettings& settings) {
  const int n = f.n();
  const int k = static_cast<int>(dec.pieces.size());
  std::vector<Exponent> targets = targets_in ? *targets_in : default_targets(dec, n);
  if (static_cast<int>(targets.size()) != k)
    throw InvalidInput("one target per piece expected");
  Exponent origin = origin_exponent(n);

  CoverBound out;
  out.piece_targets = targets;
  for (int s = 0; s < k; ++s) {
    std::vector<Exponent> verts = simplex_points(dec.tri, s);
    if (std::find(verts.begin(), verts.end(), targets[s]) == verts.end())
      throw TargetNotVertex("piece " + std::to_string(s) + ": target " +
                            exponent_to_string(targets[s]) + " is not a simplex vertex");
    try {
      SoncBound sb = f_sonc(dec.pieces[s], targets[s], settings);
      out.piece_m.push_back(sb.m_star);
      out.certificates.push_back(std::move(sb.cert));
    } catch (const SolverFailure& e) {
      out.feasible = false;
      out.message = "piece " + std::to_string(s) + ": " + e.what();
      out.lower_bound = -std::numeric_limits<double>::infinity();
      return out;
    } catch (const NotSTForm& e) {
      out.feasible = false;
      out.message = "piece " + std::to_string(s) + ": " + e.what();
      out.lower_bound = -std::numeric_limits<double>::infinity();
      return out;
    }
  }
  for (int s = 0; s < k; ++s) out.coefficient_requirements[targets[s]] += out.piece_m[s];

  bool any_origin = false;
  bool others_certified = true;
  double origin_sum = 0.0;
  for (int s = 0; s < k; ++s) {
    if (targets[s] == origin) {
      any_origin = true;
      origin_sum += out.piece_m[s];
    } else {
      double head = to_double(dec.pieces[s].coeff(targets[s]));
      if (head - out.piece_m[s] < -1e-9 * std::max(1.0, head)) others_certified = false;
    }
  }
  if (any_origin && others_certified)
    out.lower_bound = to_double(f.coeff(origin)) - origin_sum;
  return out;
}

namespace {

struct PieceScore {
  bool valid = false;
  double m = 0.0;
  double head = 0.0;  // coefficient at the piece target
};

PieceScore score_piece(const Polynomial& piece, const Exponent& target,
                       const SolverSettings& settings) {
  PieceScore sc;
  try {
    SoncBound sb = f_sonc(piece, target, settings);
    sc.valid = true;
    sc.m = sb.m_star;
    sc.head = to_double(piece.coeff(target));
  } catch (const Error&) {
  }
  return sc;
}

}  // namespace

CoverDecomposition improve_weights(const Polynomial& f, const CoverDecomposition& dec_in,
                                   const std::optional<std::vector<Exponent>>& targets_in,
                                   int budget, const SolverSettings& settings) {
  CoverDecomposition dec = dec_in;
  const int n = f.n();
  const int k = static_cast<int>(dec.pieces.size());
  if (k <= 1) return dec;
  std::vector<Exponent> targets = targets_in ? *targets_in : default_targets(dec, n);
  Exponent origin = origin_exponent(n);
  bool any_origin = false;
  for (const auto& t : targets)
    if (t == origin) any_origin = true;

  std::vector<std::set<Exponent>> vertex_sets(k);
  for (int s = 0; s < k; ++s)
    for (int idx : dec.tri.simplices[s]) vertex_sets[s].insert(dec.tri.points[idx]);

  int solves = 0;
  std::vector<PieceScore> scores(k);
  auto rebuild_piece = [&](int s) {
    Polynomial piece(n);
    for (const auto& entry : dec.splits) {
      for (std::size_t i = 0; i < entry.piece_indices.size(); ++i)
        if (entry.piece_indices[i] == s) piece.add_term(entry.exp, entry.weights[i]);
    }
    return piece;
  };
  auto objective = [&](const std::vector<PieceScore>& sc) {
    double j = 0.0;
    for (int s = 0; s < k; ++s) {
      if (!sc[s].valid) return std::numeric_limits<double>::infinity();
      bool scored = any_origin ? targets[s] == origin : true;
      if (scored) {
        j += sc[s].m;
      } else if (sc[s].head - sc[s].m < -1e-9 * std::max(1.0, sc[s].head)) {
        return std::numeric_limits<double>::infinity();  // piece no longer self-certified
      }
    }
    return j;
  };
  for (int s = 0; s < k; ++s) {
    scores[s] = score_piece(dec.pieces[s], targets[s], settings);
    ++solves;
  }
  double best = objective(scores);

  const Rational fracs[] = {Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  bool improved_any = true;
  while (improved_any && solves < budget) {
    improved_any = false;
    for (auto& entry : dec.splits) {
      if (entry.piece_indices.size() < 2) continue;
      for (std::size_t di = 0; di < entry.piece_indices.size() && solves < budget; ++di) {
        for (std::size_t ri = 0; ri < entry.piece_indices.size() && solves < budget; ++ri) {
          if (di == ri || entry.weights[di] == 0) continue;
          int donor = entry.piece_indices[di], recv = entry.piece_indices[ri];
          bool donor_vertex = vertex_sets[donor].count(entry.exp) > 0;
          for (const auto& frac : fracs) {
            if (solves >= budget) break;
            if (frac == 1 && donor_vertex) continue;  // simplex vertices keep positive mass
            Rational moved = entry.weights[di] * frac;
            Rational w_d = entry.weights[di] - moved;
            Rational w_r = entry.weights[ri] + moved;
            std::swap(entry.weights[di], w_d);
            std::swap(entry.weights[ri], w_r);
            Polynomial pd = rebuild_piece(donor), pr = rebuild_piece(recv);
            PieceScore sd = score_piece(pd, targets[donor], settings);
            PieceScore sr = score_piece(pr, targets[recv], settings);
            solves += 2;
            auto cand = scores;
            cand[donor] = sd;
            cand[recv] = sr;
            double j = objective(cand);
            if (j < best - 1e-12) {
              best = j;
              scores = cand;
              dec.pieces[donor] = std::move(pd);
              dec.pieces[recv] = std::move(pr);
              improved_any = true;
              break;  // keep the improved weights, rescan
            }
            std::swap(entry.weights[di], w_d);  // revert
            std::swap(entry.weights[ri], w_r);
          }
        }
      }
    }
  }
  return dec;
}

ConstrainedCoverBound constrained_cover_bound(const ConstrainedProblem& p,
                                              const std::optional<Triangulation>& tri_in,
                                              const SolverSettings& settings) {
  const int n = p.n();
  const int s = p.s();

  // Union-support coefficient forms, c[i] = -g_{i,e} with g_0 = -f.
  std::map<Exponent, LinearForm, GradedLexLess> forms;
  auto form_at = [&](const Exponent& e) -> LinearForm& {
    auto it = forms.find(e);
    if (it == forms.end()) {
      LinearForm lf;
      lf.c.assign(s + 1, Rational(0));
      it = forms.emplace(e, std::move(lf)).first;
    }
    return it->second;
  };
  for (const auto& [e, c] : p.f.terms()) form_at(e).c[0] = c;
  for (int i = 0; i < s; ++i)
    for (const auto& [e, c] : p.constraints[i].terms()) form_at(e).c[i + 1] = -c;

  // Triangulation candidates: even exponents whose coefficient form has a
  // positive contribution for some mu. When such a point ends up interior to
  // a cell its positive (monomial-square) contributions are dropped and only
  // the negative side survives as a tail, per the usual reduction.
  std::vector<Exponent> squares;
  std::set<Exponent> square_set;
  for (const auto& [e, lf] : forms) {
    if (all_even(e) && !lf.plus().empty()) {
      squares.push_back(e);
      square_set.insert(e);
    }
  }
  if (squares.empty()) throw DegenerateSupport("no monomial squares in the union support");
  std::map<Exponent, LinearForm, GradedLexLess> tails;
  for (const auto& [e, lf] : forms) {
    LinearForm t = lf;
    if (all_even(e))
      for (auto& ci : t.c)
        if (ci > 0) ci = 0;
    if (!t.is_zero()) tails[e] = std::move(t);
  }
  {
    std::vector<Exponent> all;
    for (const auto& [e, lf] : forms) all.push_back(e);
    for (const auto& v : hull_vertices(all))
      if (!square_set.count(v))
        throw ClubsuitViolated("union-support vertex " + exponent_to_string(v) +
                               " is odd or never carries a positive coefficient");
  }

  Triangulation tri;
  if (tri_in) {
    tri = *tri_in;
    for (const auto& pt : tri.points)
      if (!square_set.count(pt))
        throw InvalidInput("triangulation point " + exponent_to_string(pt) +
                           " is not a monomial-square exponent of G(mu)");
  } else {
    tri = triangulate_squares(squares);
  }
  const int k = static_cast<int>(tri.simplices.size());

  Exponent origin = origin_exponent(n);
  std::vector<std::vector<Exponent>> cells(k);
  std::vector<bool> has_origin(k, false);
  for (int c = 0; c < k; ++c) {
    cells[c] = simplex_points(tri, c);
    has_origin[c] =
        std::find(cells[c].begin(), cells[c].end(), origin) != cells[c].end();
  }

  // Assign every exponent to pieces; equal rational share of its form.
  struct Assigned {
    Exponent e;
    std::vector<int> holders;
    Rational share;  // 1 / |holders|
  };
  std::vector<Assigned> assignments;
  auto holders_of = [&](const Exponent& e, bool vertex_first) {
    std::vector<int> holders;
    if (vertex_first) {
      for (int c = 0; c < k; ++c)
        if (std::find(cells[c].begin(), cells[c].end(), e) != cells[c].end()) holders.push_back(c);
    }
    if (holders.empty()) {
      for (int c = 0; c < k; ++c)
        if (point_in_simplex(e, cells[c])) holders.push_back(c);
    }
    return holders;
  };
  for (const auto& [e, lf] : forms) {
    bool is_sq = square_set.count(e) > 0;
    std::vector<int> holders = holders_of(e, is_sq);
    if (holders.empty()) {
      if (!tails.count(e)) continue;  // droppable monomial-square mass
      throw TailNotCovered("exponent " + exponent_to_string(e) + " lies in no simplex");
    }
    assignments.push_back({e, holders, Rational(1, static_cast<int>(holders.size()))});
  }

  // Piece-wise data: per cell, vertex forms and tail forms (scaled shares).
  struct PieceTail {
    Exponent beta;
    LinearForm form;
    std::vector<Rational> lambda;
    std::vector<int> nz;
  };
  std::vector<std::vector<std::pair<Exponent, LinearForm>>> piece_vertices(k);
  std::vector<std::vector<PieceTail>> piece_tails(k);
  for (const auto& asg : assignments) {
    const LinearForm& lf = forms.at(asg.e);
    LinearForm share;
    share.c.reserve(lf.c.size());
    for (const auto& ci : lf.c) share.c.push_back(ci * asg.share);
    for (int c : asg.holders) {
      bool is_cell_vertex = std::find(cells[c].begin(), cells[c].end(), asg.e) != cells[c].end();
      if (is_cell_vertex) {
        piece_vertices[c].emplace_back(asg.e, share);
      } else if (tails.count(asg.e)) {
        LinearForm tshare;
        for (const auto& ci : tails.at(asg.e).c) tshare.c.push_back(ci * asg.share);
        PieceTail pt;
        pt.beta = asg.e;
        pt.form = std::move(tshare);
        pt.lambda = barycentric(asg.e, cells[c]);
        for (std::size_t j = 0; j < pt.lambda.size(); ++j)
          if (pt.lambda[j] != 0) pt.nz.push_back(static_cast<int>(j));
        piece_tails[c].push_back(std::move(pt));
      }
      // interior monomial squares of a piece only help; they carry no program data
    }
  }

  // Joint program: per piece a/b variables, shared mu at the end.
  GeometricProgram gp;
  std::vector<std::vector<int>> a_var(k);   // flattened (tail, pos) per piece
  std::vector<std::vector<int>> b_var(k);
  std::vector<std::vector<int>> vertex_order(k);  // position -> index into cells[c]; 0 = origin
  int next = 0;
  for (int c = 0; c < k; ++c) {
    // Target: the origin when present, else the graded-lex-smallest vertex;
    // origin-free pieces are self-certified by an extra constraint below.
    int target_idx = -1;
    for (std::size_t v = 0; v < cells[c].size(); ++v)
      if (cells[c][v] == origin) target_idx = static_cast<int>(v);
    if (target_idx < 0) {
      target_idx = 0;
      for (std::size_t v = 1; v < cells[c].size(); ++v)
        if (GradedLexLess{}(cells[c][v], cells[c][target_idx]))
          target_idx = static_cast<int>(v);
    }
    vertex_order[c].push_back(target_idx);
    for (std::size_t v = 0; v < cells[c].size(); ++v)
      if (static_cast<int>(v) != target_idx) vertex_order[c].push_back(static_cast<int>(v));
    int r = static_cast<int>(cells[c].size()) - 1;
    a_var[c].assign(piece_tails[c].size() * r, -1);
    b_var[c].assign(piece_tails[c].size(), -1);
    for (std::size_t ti = 0; ti < piece_tails[c].size(); ++ti) {
      for (int pos = 1; pos <= r; ++pos) {
        a_var[c][ti * r + (pos - 1)] = next;
        gp.var_names.push_back("a[T" + std::to_string(c) + "][" +
                               exponent_to_string(piece_tails[c][ti].beta) + "][" +
                               exponent_to_string(cells[c][vertex_order[c][pos]]) + "]");
        ++next;
      }
      b_var[c][ti] = next;
      gp.var_names.push_back("b[T" + std::to_string(c) + "][" +
                             exponent_to_string(piece_tails[c][ti].beta) + "]");
      ++next;
    }
  }
  std::vector<int> mu_var(s);
  for (int i = 0; i < s; ++i) {
    mu_var[i] = next++;
    gp.var_names.push_back("mu" + std::to_string(i + 1));
  }
  gp.num_vars = next;

  auto find_vertex_form = [&](int c, const Exponent& e) -> const LinearForm& {
    for (const auto& [ve, form] : piece_vertices[c])
      if (ve == e) return form;
    throw InvalidInput("internal: missing piece vertex form");
  };

  std::vector<Posynomial> piece_objective(k);
  for (int c = 0; c < k; ++c) {
    int r = static_cast<int>(cells[c].size()) - 1;
    const Exponent& target = cells[c][vertex_order[c][0]];
    const LinearForm& target_form = find_vertex_form(c, target);
    for (int i = 1; i <= s; ++i) {
      if (target_form.c[i] < 0) {
        PosyMonomial m;
        m.coeff = to_double(-target_form.c[i]);
        m.exponents.assign(gp.num_vars, Rational(0));
        m.exponents[mu_var[i - 1]] = 1;
        piece_objective[c].push_back(std::move(m));
      }
    }
    for (std::size_t ti = 0; ti < piece_tails[c].size(); ++ti) {
      const PieceTail& pt = piece_tails[c][ti];
      int origin_pos_idx = vertex_order[c][0];
      Rational lam0 = pt.lambda[origin_pos_idx];
      if (lam0 != 0) {
        PosyMonomial m;
        m.exponents.assign(gp.num_vars, Rational(0));
        double lam0_d = to_double(lam0);
        double logc = std::log(lam0_d);
        m.exponents[b_var[c][ti]] = Rational(1) / lam0;
        for (int pos = 1; pos <= r; ++pos) {
          int vj = vertex_order[c][pos];
          if (pt.lambda[vj] == 0) continue;
          double lj = to_double(pt.lambda[vj]);
          logc += (lj / lam0_d) * std::log(lj);
          m.exponents[a_var[c][ti * r + (pos - 1)]] = -(pt.lambda[vj] / lam0);
        }
        m.coeff = std::exp(logc);
        piece_objective[c].push_back(std::move(m));
      } else {
        PosyMonomial m;
        m.exponents.assign(gp.num_vars, Rational(0));
        double logc = 0.0;
        m.exponents[b_var[c][ti]] = 1;
        for (int pos = 1; pos <= r; ++pos) {
          int vj = vertex_order[c][pos];
          if (pt.lambda[vj] == 0) continue;
          double lj = to_double(pt.lambda[vj]);
          logc += lj * std::log(lj);
          m.exponents[a_var[c][ti * r + (pos - 1)]] = -pt.lambda[vj];
        }
        m.coeff = std::exp(logc);
        gp.ineq_constraints.push_back({std::move(m)});
      }
      for (const auto& side : {pt.form.plus(), pt.form.minus()}) {
        if (side.empty()) continue;
        Posynomial con;
        for (int i : side) {
          PosyMonomial m;
          m.coeff = std::abs(to_double(pt.form.c[i]));
          m.exponents.assign(gp.num_vars, Rational(0));
          if (i >= 1) m.exponents[mu_var[i - 1]] = 1;
          m.exponents[b_var[c][ti]] = -1;
          con.push_back(std::move(m));
        }
        gp.ineq_constraints.push_back(std::move(con));
      }
    }
    for (int pos = 1; pos <= r; ++pos) {
      const Exponent& ve = cells[c][vertex_order[c][pos]];
      const LinearForm& form = find_vertex_form(c, ve);
      auto plus = form.plus();
      if (plus.size() != 1)
        throw HypothesisViolated("piece " + std::to_string(c) + " vertex " +
                                 exponent_to_string(ve) + " has " + std::to_string(plus.size()) +
                                 " strictly positive coefficient terms");
      int ip = plus.front();
      double cp = to_double(form.c[ip]);
      Posynomial con;
      for (std::size_t ti = 0; ti < piece_tails[c].size(); ++ti) {
        PosyMonomial m;
        m.coeff = 1.0 / cp;
        m.exponents.assign(gp.num_vars, Rational(0));
        m.exponents[a_var[c][ti * r + (pos - 1)]] = 1;
        if (ip >= 1) m.exponents[mu_var[ip - 1]] = -1;
        con.push_back(std::move(m));
      }
      for (int i : form.minus()) {
        PosyMonomial m;
        m.coeff = to_double(-form.c[i]) / cp;
        m.exponents.assign(gp.num_vars, Rational(0));
        if (i >= 1) m.exponents[mu_var[i - 1]] = 1;
        if (ip >= 1) m.exponents[mu_var[ip - 1]] -= 1;
        con.push_back(std::move(m));
      }
      if (!con.empty()) gp.ineq_constraints.push_back(std::move(con));
    }
  }
  for (int c = 0; c < k; ++c) {
    if (has_origin[c]) {
      for (const auto& m : piece_objective[c]) gp.objective.push_back(m);
      continue;
    }
    // Origin-free piece: its required target mass must fit under the piece's
    // own target coefficient, so the piece is nonnegative on its own.
    if (piece_objective[c].empty()) continue;
    const Exponent& target = cells[c][vertex_order[c][0]];
    const LinearForm& form = find_vertex_form(c, target);
    auto plus = form.plus();
    if (plus.size() != 1)
      throw HypothesisViolated("piece " + std::to_string(c) + " target " +
                               exponent_to_string(target) + " has " + std::to_string(plus.size()) +
                               " strictly positive coefficient terms");
    int ip = plus.front();
    double cp = to_double(form.c[ip]);
    Posynomial con;
    for (const auto& m : piece_objective[c]) {
      PosyMonomial q = m;
      q.coeff /= cp;
      if (ip >= 1) q.exponents[mu_var[ip - 1]] -= 1;
      con.push_back(std::move(q));
    }
    gp.ineq_constraints.push_back(std::move(con));
  }

  SolveResult sol = solve_gp(gp, settings);
  if (sol.status != SolveStatus::Optimal)
    throw SolverFailure("constrained cover program: " + to_string(sol.status) +
                        (sol.message.empty() ? "" : " (" + sol.message + ")"));

  ConstrainedCoverBound out;
  out.solve = sol;
  out.program_kind = "cover-constrained";
  out.gamma = sol.objective_value;
  out.mu.assign(s, 0.0);
  for (int i = 0; i < s; ++i) {
    double v = sol.assignment[mu_var[i]];
    out.mu[i] = v <= settings.zero_threshold ? 0.0 : v;
  }
  for (int c = 0; c < k; ++c)
    out.piece_m.push_back(eval_posynomial(piece_objective[c], sol.assignment));
  out.bound = to_double(p.f.coeff(origin)) - out.gamma;

  // mu = 0 probe, mirroring the single-simplex pipeline.
  double probe = -std::numeric_limits<double>::infinity();
  try {
    probe = f_sonc(p.f, std::nullopt, settings).bound;
  } catch (const Error&) {
    try {
      CoverBound cb = bound_via_cover(p.f, decompose(p.f), std::nullopt, settings);
      if (cb.lower_bound) probe = *cb.lower_bound;
    } catch (const Error&) {
    }
  }
  if (probe > out.bound) {
    out.bound = probe;
    out.mu.assign(s, 0.0);
    out.program_kind = "cover-constrained (mu0 probe)";
  }

  // Certificate for the concrete G(mu*): the program value only bounds it, so
  // re-derive a checkable decomposition at the solved multipliers.
  Polynomial g_star = assemble_g(p, out.mu);
  double cert_slack = 1e-6 * std::max(1.0, std::abs(out.bound));
  try {
    SoncBound sb = f_sonc(g_star, std::nullopt, settings);
    if (sb.bound >= out.bound - cert_slack) {
      out.bound = std::max(out.bound, sb.bound);
      out.certificate = sb.cert;
    }
  } catch (const Error&) {
    try {
      CoverDecomposition cdec = decompose(g_star);
      CoverBound cb = bound_via_cover(g_star, cdec, std::nullopt, settings);
      if (cb.lower_bound && *cb.lower_bound >= out.bound - cert_slack) {
        out.bound = std::max(out.bound, *cb.lower_bound);
        out.cert_pieces = cdec.pieces;
        out.piece_certificates = cb.certificates;
      }
    } catch (const Error&) {
    }
  }
  return out;
}

nlohmann::json triangulation_to_json(const Triangulation& tri) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cell : tri.simplices) {
    nlohmann::json cj = nlohmann::json::array();
    for (int idx : cell) cj.push_back(tri.points[idx]);
    arr.push_back(cj);
  }
  return arr;
}

Triangulation triangulation_from_json(const nlohmann::json& j) {
  Triangulation tri;
  std::map<Exponent, int, GradedLexLess> index_of;
  for (const auto& cell : j) {
    std::vector<int> cj;
    for (const auto& ej : cell) {
      Exponent e = ej.get<Exponent>();
      auto it = index_of.find(e);
      if (it == index_of.end()) {
        it = index_of.emplace(e, static_cast<int>(tri.points.size())).first;
        tri.points.push_back(e);
      }
      cj.push_back(it->second);
    }
    tri.simplices.push_back(std::move(cj));
  }
  return tri;
}

}  // namespace sonc
