#include "lg/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace lg {

namespace {

struct Signature {
  Pol arg0, arg1, res;
  bool shifted;  // result lands in Ṗ or Ṅ
  bool mono0, mono1;
};

const std::map<OpKey, Signature>& signatures() {
  const Pol P = Pol::Pos, N = Pol::Neg;
  static const std::map<OpKey, Signature> m = {
      {{Op::Otimes, Var::None}, {P, P, P, false, true, true}},
      {{Op::Oslash, Var::None}, {P, N, P, false, true, false}},
      {{Op::Obslash, Var::None}, {N, P, P, false, false, true}},
      {{Op::Oplus, Var::None}, {N, N, N, false, true, true}},
      {{Op::Under, Var::None}, {P, N, N, false, false, true}},
      {{Op::Over, Var::None}, {N, P, N, false, true, false}},
      {{Op::Otimes, Var::L}, {N, P, N, true, true, true}},
      {{Op::Oslash, Var::L}, {N, N, N, true, true, false}},
      {{Op::Obslash, Var::L}, {P, P, N, true, false, true}},
      {{Op::Oplus, Var::L}, {P, N, P, true, true, true}},
      {{Op::Under, Var::L}, {N, N, P, true, false, true}},
      {{Op::Over, Var::L}, {P, P, P, true, true, false}},
      {{Op::Otimes, Var::R}, {P, N, N, true, true, true}},
      {{Op::Oslash, Var::R}, {P, P, N, true, true, false}},
      {{Op::Obslash, Var::R}, {N, N, N, true, false, true}},
      {{Op::Oplus, Var::R}, {N, P, P, true, true, true}},
      {{Op::Under, Var::R}, {P, P, P, true, false, true}},
      {{Op::Over, Var::R}, {N, N, P, true, true, false}},
  };
  return m;
}

const std::map<Op, std::string>& base_names() {
  static const std::map<Op, std::string> m = {{Op::Otimes, "otimes"}, {Op::Oslash, "oslash"},
                                              {Op::Obslash, "obslash"}, {Op::Oplus, "oplus"},
                                              {Op::Under, "under"},   {Op::Over, "over"}};
  return m;
}

std::string cell(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string rel_matrix(const WeakRel& r) {
  std::ostringstream os;
  for (int i = 0; i < r.rows; ++i) {
    for (int j = 0; j < r.cols; ++j) os << (j ? " " : "") << (r(i, j) ? 1 : 0);
    os << "\n";
  }
  return os.str();
}

WeakRel from_poset(const FinitePoset& p) { return {p.size, p.size, p.leq}; }

bool monotone_map(const FinitePoset& a, const FinitePoset& b, const std::vector<int>& f) {
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      if (a.le(x, y) && !b.le(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)])) return false;
  return true;
}

// Right adjoint of f : A → B, if it exists.
std::optional<std::vector<int>> right_adjoint(const FinitePoset& a, const FinitePoset& b, const std::vector<int>& f) {
  std::vector<int> g(static_cast<std::size_t>(b.size));
  for (int y = 0; y < b.size; ++y) {
    bool found = false;
    for (int x = 0; x < a.size && !found; ++x) {
      bool ok = true;
      for (int z = 0; z < a.size && ok; ++z) ok = b.le(f[static_cast<std::size_t>(z)], y) == a.le(z, x);
      if (ok) {
        g[static_cast<std::size_t>(y)] = x;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return g;
}

}  // namespace

FinitePoset FinitePoset::discrete(int n) {
  FinitePoset p{n, std::vector<char>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) p.leq[static_cast<std::size_t>(i * n + i)] = 1;
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  FinitePoset p{n, std::vector<char>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.leq[static_cast<std::size_t>(i * n + j)] = 1;
  return p;
}

std::vector<std::string> poset_violations(const FinitePoset& p, const std::string& name) {
  std::vector<std::string> out;
  if (p.leq.size() != static_cast<std::size_t>(p.size * p.size)) return {name + ": table has the wrong size"};
  for (int a = 0; a < p.size; ++a) {
    if (!p.le(a, a)) out.push_back(name + ": not reflexive at " + std::to_string(a));
    for (int b = 0; b < p.size; ++b) {
      if (a != b && p.le(a, b) && p.le(b, a)) out.push_back(name + ": not antisymmetric at " + cell(a, b));
      for (int c = 0; c < p.size; ++c)
        if (p.le(a, b) && p.le(b, c) && !p.le(a, c))
          out.push_back(name + ": not transitive at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
    }
  }
  return out;
}

std::vector<std::string> weakening_violations(const FinitePoset& src, const FinitePoset& tgt, const WeakRel& w,
                                              const std::string& name) {
  if (w.rows != src.size || w.cols != tgt.size) return {name + ": relation has the wrong shape"};
  std::vector<std::string> out;
  for (int a = 0; a < src.size; ++a)
    for (int b = 0; b < tgt.size; ++b) {
      if (!w(a, b)) continue;
      for (int a2 = 0; a2 < src.size; ++a2)
        for (int b2 = 0; b2 < tgt.size; ++b2)
          if (src.le(a2, a) && tgt.le(b, b2) && !w(a2, b2))
            out.push_back(name + ": not compatible with the orders at " + cell(a, b) + " -> " + cell(a2, b2));
    }
  return out;
}

FinitePoset collage(const FinitePoset& src, const FinitePoset& tgt, const WeakRel& w) {
  int n = src.size + tgt.size;
  FinitePoset p{n, std::vector<char>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool v;
      if (i < src.size && j < src.size) v = src.le(i, j);
      else if (i >= src.size && j >= src.size) v = tgt.le(i - src.size, j - src.size);
      else if (i < src.size) v = w(i, j - src.size);
      else v = false;
      p.leq[static_cast<std::size_t>(i * n + j)] = v ? 1 : 0;
    }
  return p;
}

std::string op_name(OpKey k) {
  std::string s = base_names().at(k.op);
  if (k.var == Var::L) s += "_l";
  if (k.var == Var::R) s += "_r";
  return s;
}

std::optional<OpKey> op_key(const std::string& name) {
  for (const auto& [k, _] : signatures())
    if (op_name(k) == name) return k;
  return std::nullopt;
}

const std::vector<OpKey>& all_op_keys() {
  static const std::vector<OpKey> v = [] {
    std::vector<OpKey> out;
    for (Var var : {Var::None, Var::L, Var::R})
      for (Op op : {Op::Otimes, Op::Oslash, Op::Obslash, Op::Oplus, Op::Under, Op::Over}) out.push_back({op, var});
    return out;
  }();
  return v;
}

// ---------------------------------------------------------------- FiniteFPLG

void FiniteFPLG::complete() {
  dot = WeakRel::empty(P.size, Nd.size);
  for (int p = 0; p < P.size; ++p)
    for (int n = 0; n < Nd.size; ++n) dot.set(p, n, Nd.le(up[static_cast<std::size_t>(p)], n));
  dotw = WeakRel::empty(Pd.size, N.size);
  for (int p = 0; p < Pd.size; ++p)
    for (int n = 0; n < N.size; ++n) dotw.set(p, n, N.le(upl[static_cast<std::size_t>(p)], n));
  pos = collage(P, Pd, dotr);
  // Ṅ sits below N, but N is listed first
  int m = N.size + Nd.size;
  neg = {m, std::vector<char>(static_cast<std::size_t>(m * m), 0)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool v;
      if (i < N.size && j < N.size) v = N.le(i, j);
      else if (i >= N.size && j >= N.size) v = Nd.le(i - N.size, j - N.size);
      else if (i >= N.size) v = dotb(i - N.size, j);
      else v = false;
      neg.leq[static_cast<std::size_t>(i * m + j)] = v ? 1 : 0;
    }
  cw = WeakRel::empty(pos.size, neg.size);
  for (int i = 0; i < pos.size; ++i)
    for (int j = 0; j < neg.size; ++j) {
      bool ip = i < P.size, jn = j < N.size;
      bool v = ip && jn ? w(i, j) : ip ? dot(i, j - N.size) : jn ? dotw(i - P.size, j) : false;
      cw.set(i, j, v);
    }
}

Val FiniteFPLG::apply(OpKey k, Val a, Val b) const {
  const Signature& s = signatures().at(k);
  if (a.pol != s.arg0 || b.pol != s.arg1) throw AlgebraError("argument polarity mismatch for " + op_name(k));
  auto it = ops.find(k);
  if (it == ops.end()) throw AlgebraError("no table for " + op_name(k));
  return {s.res, it->second[static_cast<std::size_t>(a.idx * size(s.arg1) + b.idx)]};
}

bool FiniteFPLG::related(Val a, Val b) const {
  if (a.pol == Pol::Pos && b.pol == Pol::Pos) return pos.le(a.idx, b.idx);
  if (a.pol == Pol::Neg && b.pol == Pol::Neg) return neg.le(a.idx, b.idx);
  if (a.pol == Pol::Pos) return cw(a.idx, b.idx);
  return false;
}

AlgebraReport check_fplg_axioms(const FiniteFPLG& a) {
  AlgebraReport r;
  auto add = [&](std::vector<std::string> v) {
    for (auto& s : v) r.violations.push_back(std::move(s));
  };
  auto bad = [&](const std::string& s) { r.violations.push_back(s); };
  add(poset_violations(a.P, "P"));
  add(poset_violations(a.Pd, "Pd"));
  add(poset_violations(a.N, "N"));
  add(poset_violations(a.Nd, "Nd"));
  if (!r.violations.empty()) {
    r.ok = false;
    return r;
  }
  auto map_ok = [&](const std::vector<int>& f, const FinitePoset& from, const FinitePoset& to, const char* name) {
    if (f.size() != static_cast<std::size_t>(from.size) ||
        std::any_of(f.begin(), f.end(), [&](int x) { return x < 0 || x >= to.size; })) {
      bad(std::string(name) + ": map has the wrong shape");
      return false;
    }
    if (!monotone_map(from, to, f)) bad(std::string(name) + ": not monotone");
    return true;
  };
  bool shapes = map_ok(a.up, a.P, a.Nd, "up") & map_ok(a.dnr, a.Nd, a.P, "dnr") &
                map_ok(a.upl, a.Pd, a.N, "upl") & map_ok(a.dn, a.N, a.Pd, "dn");
  if (a.dotr.rows != a.P.size || a.dotr.cols != a.Pd.size || a.w.rows != a.P.size || a.w.cols != a.N.size ||
      a.dotb.rows != a.Nd.size || a.dotb.cols != a.N.size) {
    bad("primitive relations have the wrong shape");
    shapes = false;
  }
  if (!shapes) {
    r.ok = false;
    return r;
  }
  auto at = [](const std::vector<int>& f, int i) { return f[static_cast<std::size_t>(i)]; };
  for (int p = 0; p < a.P.size; ++p)
    for (int n = 0; n < a.Nd.size; ++n)
      if (a.Nd.le(at(a.up, p), n) != a.P.le(p, at(a.dnr, n))) bad("up -| dnr fails at " + cell(p, n));
  for (int p = 0; p < a.Pd.size; ++p)
    for (int n = 0; n < a.N.size; ++n)
      if (a.N.le(at(a.upl, p), n) != a.Pd.le(p, at(a.dn, n))) bad("upl -| dn fails at " + cell(p, n));
  add(weakening_violations(a.P, a.Pd, a.dotr, "dotr"));
  add(weakening_violations(a.P, a.N, a.w, "w"));
  add(weakening_violations(a.Nd, a.N, a.dotb, "dotb"));
  add(weakening_violations(a.P, a.Nd, a.dot, "dot"));
  add(weakening_violations(a.Pd, a.N, a.dotw, "dotw"));
  for (int p = 0; p < a.P.size; ++p)
    for (int n = 0; n < a.N.size; ++n) {
      bool l = a.dotb(at(a.up, p), n), m = a.w(p, n), rr = a.dotr(p, at(a.dn, n));
      if (l != m || m != rr) bad("shift intro/elim fails at " + cell(p, n));
      bool viaPd = false, viaNd = false;
      for (int q = 0; q < a.Pd.size; ++q) viaPd = viaPd || (a.dotr(p, q) && a.dotw(q, n));
      for (int q = 0; q < a.Nd.size; ++q) viaNd = viaNd || (a.dot(p, q) && a.dotb(q, n));
      if (viaPd != m) bad("dotr;dotw differs from w at " + cell(p, n));
      if (viaNd != m) bad("dot;dotb differs from w at " + cell(p, n));
    }
  add(poset_violations(a.pos, "positive collage"));
  add(poset_violations(a.neg, "negative collage"));
  add(weakening_violations(a.pos, a.neg, a.cw, "collage weakening relation"));

  for (const auto& [k, s] : signatures()) {
    auto it = a.ops.find(k);
    int r0 = a.size(s.arg0), r1 = a.size(s.arg1);
    int lo = s.shifted ? (s.res == Pol::Pos ? a.P.size : a.N.size) : 0;
    int hi = s.shifted ? a.size(s.res) : (s.res == Pol::Pos ? a.P.size : a.N.size);
    if (it == a.ops.end() || it->second.size() != static_cast<std::size_t>(r0 * r1) ||
        std::any_of(it->second.begin(), it->second.end(), [&](int x) { return x < lo || x >= hi; })) {
      bad(op_name(k) + ": table missing or out of range");
      r.ok = false;
      return r;
    }
  }
  auto ord = [&](Pol p) -> const FinitePoset& { return p == Pol::Pos ? a.pos : a.neg; };
  for (const auto& [k, s] : signatures()) {
    const auto& o0 = ord(s.arg0);
    const auto& o1 = ord(s.arg1);
    const auto& res = ord(s.res);
    for (int x = 0; x < o0.size; ++x)
      for (int x2 = 0; x2 < o0.size; ++x2)
        for (int y = 0; y < o1.size; ++y)
          for (int y2 = 0; y2 < o1.size; ++y2) {
            bool below0 = s.mono0 ? o0.le(x, x2) : o0.le(x2, x);
            bool below1 = s.mono1 ? o1.le(y, y2) : o1.le(y2, y);
            if (!below0 || !below1) continue;
            Val v = a.apply(k, {s.arg0, x}, {s.arg1, y}), v2 = a.apply(k, {s.arg0, x2}, {s.arg1, y2});
            if (!res.le(v.idx, v2.idx)) {
              bad(op_name(k) + ": order type violated at " + cell(x, y) + " / " + cell(x2, y2));
              goto next_op;
            }
          }
  next_op:;
  }

  const Pol Pp = Pol::Pos, Nn = Pol::Neg;
  auto T = [&](Op o, Var v, Val x, Val y) { return a.apply({o, v}, x, y); };
  auto R = [&](Val x, Val y) { return a.related(x, y); };
  int np = a.pos.size, nn = a.neg.size;
  auto triple = [&](const std::string& name, bool l, bool m, bool rr, const std::string& at3) {
    if (l != m || m != rr) bad(name + " fails at " + at3);
  };
  auto c3 = [](int x, int y, int z) { return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z); };
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < np; ++q)
      for (int n = 0; n < nn; ++n) {
        Val P{Pp, p}, Q{Pp, q}, N{Nn, n};
        triple("otimes/under/over", R(Q, T(Op::Under, Var::None, P, N)), R(T(Op::Otimes, Var::None, P, Q), N),
               R(P, T(Op::Over, Var::None, N, Q)), c3(p, q, n));
      }
  for (int p = 0; p < np; ++p)
    for (int m = 0; m < nn; ++m)
      for (int n = 0; n < nn; ++n) {
        Val P{Pp, p}, M{Nn, m}, N{Nn, n};
        triple("oslash/oplus/obslash", R(T(Op::Oslash, Var::None, P, N), M), R(P, T(Op::Oplus, Var::None, M, N)),
               R(T(Op::Obslash, Var::None, M, P), N), c3(p, m, n));
      }
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < np; ++q)
      for (int s = 0; s < np; ++s) {
        Val P{Pp, p}, Q{Pp, q}, S{Pp, s};
        triple("under_r/otimes/over_l", R(Q, T(Op::Under, Var::R, P, S)), R(T(Op::Otimes, Var::None, P, Q), S),
               R(P, T(Op::Over, Var::L, S, Q)), c3(p, q, s));
      }
  for (int l = 0; l < nn; ++l)
    for (int m = 0; m < nn; ++m)
      for (int n = 0; n < nn; ++n) {
        Val L{Nn, l}, M{Nn, m}, N{Nn, n};
        triple("oslash_l/oplus/obslash_r", R(T(Op::Oslash, Var::L, L, N), M), R(L, T(Op::Oplus, Var::None, M, N)),
               R(T(Op::Obslash, Var::R, M, L), N), c3(l, m, n));
      }
  for (int q = 0; q < np; ++q)
    for (int l = 0; l < nn; ++l)
      for (int n = 0; n < nn; ++n) {
        Val Q{Pp, q}, L{Nn, l}, N{Nn, n};
        triple("under_l/otimes_l/over", R(Q, T(Op::Under, Var::L, L, N)), R(T(Op::Otimes, Var::L, L, Q), N),
               R(L, T(Op::Over, Var::None, N, Q)), c3(q, l, n));
      }
  for (int p = 0; p < np; ++p)
    for (int s = 0; s < np; ++s)
      for (int m = 0; m < nn; ++m) {
        Val P{Pp, p}, S{Pp, s}, M{Nn, m};
        triple("oslash_r/oplus_r/obslash", R(T(Op::Oslash, Var::R, P, S), M), R(P, T(Op::Oplus, Var::R, M, S)),
               R(T(Op::Obslash, Var::None, M, P), S), c3(p, s, m));
      }
  for (int p = 0; p < np; ++p)
    for (int l = 0; l < nn; ++l)
      for (int n = 0; n < nn; ++n) {
        Val P{Pp, p}, L{Nn, l}, N{Nn, n};
        triple("under/otimes_r/over_r", R(L, T(Op::Under, Var::None, P, N)), R(T(Op::Otimes, Var::R, P, L), N),
               R(P, T(Op::Over, Var::R, N, L)), c3(p, l, n));
      }
  for (int p = 0; p < np; ++p)
    for (int s = 0; s < np; ++s)
      for (int n = 0; n < nn; ++n) {
        Val P{Pp, p}, S{Pp, s}, N{Nn, n};
        triple("oslash/oplus_l/obslash_l", R(T(Op::Oslash, Var::None, P, N), S), R(P, T(Op::Oplus, Var::L, S, N)),
               R(T(Op::Obslash, Var::L, S, P), N), c3(p, s, n));
      }
  r.ok = r.violations.empty();
  return r;
}

// ---------------------------------------------------------------- LG-algebras

AlgebraReport check_lg(const FiniteLG& g) {
  AlgebraReport r;
  r.violations = poset_violations(g.order, "G");
  int n = g.order.size;
  for (Op o : {Op::Otimes, Op::Oplus, Op::Under, Op::Over, Op::Oslash, Op::Obslash}) {
    auto it = g.ops.find(o);
    if (it == g.ops.end() || it->second.size() != static_cast<std::size_t>(n * n)) {
      r.violations.push_back(base_names().at(o) + ": table missing");
      r.ok = false;
      return r;
    }
  }
  if (!r.violations.empty()) {
    r.ok = false;
    return r;
  }
  const auto& le = g.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        bool x = le.le(b, g.op(Op::Under, a, c)), y = le.le(g.op(Op::Otimes, a, b), c),
             z = le.le(a, g.op(Op::Over, c, b));
        if (x != y || y != z) r.violations.push_back("otimes residuation fails at " + cell(a, b) + "," + std::to_string(c));
        bool u = le.le(g.op(Op::Oslash, c, b), a), v = le.le(c, g.op(Op::Oplus, a, b)),
             w = le.le(g.op(Op::Obslash, a, c), b);
        if (u != v || v != w) r.violations.push_back("oplus residuation fails at " + cell(a, b) + "," + std::to_string(c));
      }
  r.ok = r.violations.empty();
  return r;
}

std::optional<FiniteLG> lg_from_products(const FinitePoset& order, const std::vector<int>& otimes,
                                         const std::vector<int>& oplus) {
  int n = order.size;
  FiniteLG g{order, {{Op::Otimes, otimes}, {Op::Oplus, oplus}}};
  auto solve = [&](auto good) -> std::optional<int> {
    for (int x = 0; x < n; ++x)
      if (good(x)) return x;
    return std::nullopt;
  };
  std::vector<int> under(static_cast<std::size_t>(n * n)), over(under), osl(under), obs(under);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      auto u = solve([&](int x) {
        for (int b = 0; b < n; ++b)
          if (order.le(b, x) != order.le(g.op(Op::Otimes, a, b), c)) return false;
        return true;
      });
      auto o = solve([&](int x) {
        for (int b = 0; b < n; ++b)
          if (order.le(b, x) != order.le(g.op(Op::Otimes, b, a), c)) return false;
        return true;
      });
      auto s = solve([&](int x) {
        for (int b = 0; b < n; ++b)
          if (order.le(x, b) != order.le(c, g.op(Op::Oplus, b, a))) return false;
        return true;
      });
      auto t = solve([&](int x) {
        for (int b = 0; b < n; ++b)
          if (order.le(x, b) != order.le(c, g.op(Op::Oplus, a, b))) return false;
        return true;
      });
      if (!u || !o || !s || !t) return std::nullopt;
      std::size_t i = static_cast<std::size_t>(a * n + c);
      under[i] = *u;                                  // a \ c
      over[static_cast<std::size_t>(c * n + a)] = *o;  // c / a
      osl[static_cast<std::size_t>(c * n + a)] = *s;   // c ⊘ a
      obs[i] = *t;                                    // a ⦸ c
    }
  g.ops[Op::Under] = under;
  g.ops[Op::Over] = over;
  g.ops[Op::Oslash] = osl;
  g.ops[Op::Obslash] = obs;
  return g;
}

FiniteLG chain_lg(int n) {
  FinitePoset p = FinitePoset::chain(n);
  std::vector<int> meet(static_cast<std::size_t>(n * n)), join(meet);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      meet[static_cast<std::size_t>(a * n + b)] = std::min(a, b);
      join[static_cast<std::size_t>(a * n + b)] = std::max(a, b);
    }
  return *lg_from_products(p, meet, join);
}

FiniteLG boolean_lg(int atoms) {
  int n = 1 << atoms;
  FinitePoset p{n, std::vector<char>(static_cast<std::size_t>(n * n), 0)};
  std::vector<int> meet(static_cast<std::size_t>(n * n)), join(meet);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      p.leq[static_cast<std::size_t>(a * n + b)] = (a & b) == a ? 1 : 0;
      meet[static_cast<std::size_t>(a * n + b)] = a & b;
      join[static_cast<std::size_t>(a * n + b)] = a | b;
    }
  return *lg_from_products(p, meet, join);
}

bool isomorphic(const FiniteLG& a, const FiniteLG& b) {
  int n = a.order.size;
  if (n != b.order.size) return false;
  std::vector<int> f(static_cast<std::size_t>(n));
  std::iota(f.begin(), f.end(), 0);
  auto F = [&](int x) { return f[static_cast<std::size_t>(x)]; };
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        ok = a.order.le(x, y) == b.order.le(F(x), F(y));
        for (Op o : {Op::Otimes, Op::Oplus, Op::Under, Op::Over, Op::Oslash, Op::Obslash})
          ok = ok && F(a.op(o, x, y)) == b.op(o, F(x), F(y));
      }
    if (ok) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

FiniteFPLG from_lg(const FiniteLG& g, const std::string& name) {
  if (!check_lg(g).ok) throw AlgebraError("not an LG-algebra: " + check_lg(g).violations.front());
  int n = g.order.size;
  FiniteFPLG a;
  a.name = name;
  a.P = a.Pd = a.N = a.Nd = g.order;
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  a.up = a.dnr = a.upl = a.dn = id;
  a.dotr = a.w = a.dotb = from_poset(g.order);
  for (const auto& [k, s] : signatures()) {
    std::vector<int> t;
    for (int x = 0; x < 2 * n; ++x)
      for (int y = 0; y < 2 * n; ++y) t.push_back(g.op(k.op, x % n, y % n) + (s.shifted ? n : 0));
    a.ops[k] = t;
  }
  a.complete();
  return a;
}

FiniteLG to_lg(const FiniteFPLG& a) {
  int np = a.P.size, n = a.P.size + a.N.size;
  auto plus = [&](int x) { return x < np ? Val{Pol::Pos, x} : Val{Pol::Pos, np + a.dn[static_cast<std::size_t>(x - np)]}; };
  auto minus = [&](int x) {
    return x >= np ? Val{Pol::Neg, x - np} : Val{Pol::Neg, a.N.size + a.up[static_cast<std::size_t>(x)]};
  };
  auto back = [&](Val v) { return v.pol == Pol::Pos ? v.idx : np + v.idx; };
  auto le = [&](int x, int y) { return a.cw(plus(x).idx, minus(y).idx); };
  auto op = [&](Op o, int x, int y) {
    switch (o) {
      case Op::Otimes: return back(a.apply({o, Var::None}, plus(x), plus(y)));
      case Op::Oslash: return back(a.apply({o, Var::None}, plus(x), minus(y)));
      case Op::Obslash: return back(a.apply({o, Var::None}, minus(x), plus(y)));
      case Op::Oplus: return back(a.apply({o, Var::None}, minus(x), minus(y)));
      case Op::Under: return back(a.apply({o, Var::None}, plus(x), minus(y)));
      default: return back(a.apply({o, Var::None}, minus(x), plus(y)));
    }
  };
  std::vector<int> cls(static_cast<std::size_t>(n), -1), rep;
  for (int x = 0; x < n; ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    int c = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int y = x; y < n; ++y)
      if (le(x, y) && le(y, x)) cls[static_cast<std::size_t>(y)] = c;
  }
  int m = static_cast<int>(rep.size());
  FiniteLG g;
  g.order = {m, std::vector<char>(static_cast<std::size_t>(m * m), 0)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.order.leq[static_cast<std::size_t>(i * m + j)] = le(rep[static_cast<std::size_t>(i)], rep[static_cast<std::size_t>(j)]) ? 1 : 0;
  for (Op o : {Op::Otimes, Op::Oplus, Op::Under, Op::Over, Op::Oslash, Op::Obslash}) {
    std::vector<int> t(static_cast<std::size_t>(m * m), -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int c = cls[static_cast<std::size_t>(op(o, x, y))];
        int& slot = t[static_cast<std::size_t>(cls[static_cast<std::size_t>(x)] * m + cls[static_cast<std::size_t>(y)])];
        if (slot >= 0 && slot != c) throw AlgebraError(base_names().at(o) + " does not respect the quotient");
        slot = c;
      }
    g.ops[o] = t;
  }
  return g;
}

// ---------------------------------------------------------------- random instances

namespace {

FinitePoset random_poset(std::mt19937& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  FinitePoset p = FinitePoset::discrete(n);
  std::bernoulli_distribution edge(0.45);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) p.leq[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] * n + perm[static_cast<std::size_t>(j)])] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.le(i, k) && p.le(k, j)) p.leq[static_cast<std::size_t>(i * n + j)] = 1;
  return p;
}

std::vector<std::vector<int>> all_maps(int from, int to) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(from), 0);
  while (true) {
    out.push_back(f);
    int i = 0;
    while (i < from && ++f[static_cast<std::size_t>(i)] == to) f[static_cast<std::size_t>(i++)] = 0;
    if (i == from) return out;
  }
}

std::vector<WeakRel> all_weakenings(const FinitePoset& a, const FinitePoset& b) {
  std::vector<WeakRel> out;
  int cells = a.size * b.size;
  for (unsigned mask = 0; mask < (1u << cells); ++mask) {
    WeakRel r = WeakRel::empty(a.size, b.size);
    for (int i = 0; i < cells; ++i) r.rel[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1 : 0;
    if (weakening_violations(a, b, r, "").empty()) out.push_back(r);
  }
  return out;
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// Some x in [lo, hi) with rel(z, x) == cond(z) for every z < count.
template <class Rel, class Cond>
std::optional<int> representative(int lo, int hi, int count, Rel rel, Cond cond) {
  for (int x = lo; x < hi; ++x) {
    bool ok = true;
    for (int z = 0; z < count && ok; ++z) ok = rel(z, x) == cond(z);
    if (ok) return x;
  }
  return std::nullopt;
}

// g : positive collage → P, one row or column of ⊗. Accepts g when both residuals
// exist along it and the cw-residual itself has a left adjoint into Ṅ.
bool good_times_slice(const FiniteFPLG& a, const std::vector<int>& g) {
  int np = a.pos.size, nn = a.neg.size;
  auto G = [&](int q) { return g[static_cast<std::size_t>(q)]; };
  std::vector<int> h(static_cast<std::size_t>(nn));
  for (int n = 0; n < nn; ++n) {
    auto x = representative(0, a.N.size, np, [&](int q, int v) { return a.cw(q, v); },
                            [&](int q) { return a.cw(G(q), n); });
    if (!x) return false;
    h[static_cast<std::size_t>(n)] = *x;
  }
  for (int s = 0; s < np; ++s)
    if (!representative(a.P.size, np, np, [&](int q, int v) { return a.pos.le(q, v); },
                        [&](int q) { return a.pos.le(G(q), s); }))
      return false;
  for (int l = 0; l < nn; ++l)
    if (!representative(a.N.size, nn, nn, [&](int n, int v) { return a.neg.le(v, n); },
                        [&](int n) { return a.neg.le(l, h[static_cast<std::size_t>(n)]); }))
      return false;
  return true;
}

// g : negative collage → N, one row or column of ⊕, dual to the above.
bool good_plus_slice(const FiniteFPLG& a, const std::vector<int>& g) {
  int np = a.pos.size, nn = a.neg.size;
  auto G = [&](int n) { return g[static_cast<std::size_t>(n)]; };
  std::vector<int> k(static_cast<std::size_t>(np));
  for (int p = 0; p < np; ++p) {
    auto x = representative(0, a.P.size, nn, [&](int n, int v) { return a.cw(v, n); },
                            [&](int n) { return a.cw(p, G(n)); });
    if (!x) return false;
    k[static_cast<std::size_t>(p)] = *x;
  }
  for (int l = 0; l < nn; ++l)
    if (!representative(a.N.size, nn, nn, [&](int n, int v) { return a.neg.le(v, n); },
                        [&](int n) { return a.neg.le(l, G(n)); }))
      return false;
  for (int r = 0; r < np; ++r)
    if (!representative(a.P.size, np, np, [&](int p, int v) { return a.pos.le(p, v); },
                        [&](int p) { return a.pos.le(k[static_cast<std::size_t>(p)], r); }))
      return false;
  return true;
}

// Random square table over `dom` with values in the pure part [0, hi) of `dom`, monotone
// in both arguments, whose rows and columns all pass `good`.
std::optional<std::vector<int>> random_table(std::mt19937& rng, const FinitePoset& dom, int hi,
                                             const std::function<bool(const std::vector<int>&)>& good) {
  int n = dom.size;
  std::vector<std::vector<int>> slices;
  for (const auto& f : all_maps(n, hi))
    if (monotone_map(dom, dom, f) && good(f)) slices.push_back(f);
  if (slices.empty()) return std::nullopt;
  std::set<std::vector<int>> allowed(slices.begin(), slices.end());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) below[static_cast<std::size_t>(x)] += dom.le(y, x) ? 1 : 0;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return below[static_cast<std::size_t>(x)] < below[static_cast<std::size_t>(y)]; });
  std::vector<const std::vector<int>*> rows(static_cast<std::size_t>(n), nullptr);
  int budget = 4000;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (--budget < 0) return false;
    if (i == order.size()) {
      for (int c = 0; c < n; ++c) {
        std::vector<int> col;
        for (int r = 0; r < n; ++r) col.push_back((*rows[static_cast<std::size_t>(r)])[static_cast<std::size_t>(c)]);
        if (!allowed.count(col)) return false;
      }
      return true;
    }
    int r = order[i];
    std::vector<std::size_t> idx(slices.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t j : idx) {
      const auto& s = slices[j];
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        int r2 = order[k];
        const auto& s2 = *rows[static_cast<std::size_t>(r2)];
        for (int c = 0; c < n && ok; ++c) {
          if (dom.le(r2, r)) ok = dom.le(s2[static_cast<std::size_t>(c)], s[static_cast<std::size_t>(c)]);
          if (ok && dom.le(r, r2)) ok = dom.le(s[static_cast<std::size_t>(c)], s2[static_cast<std::size_t>(c)]);
        }
      }
      if (!ok) continue;
      rows[static_cast<std::size_t>(r)] = &s;
      if (go(i + 1)) return true;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  std::vector<int> t;
  for (const auto* r : rows) t.insert(t.end(), r->begin(), r->end());
  return t;
}

// Fills every table of `a` other than otimes and oplus from the adjunctions.
bool solve_ops(FiniteFPLG& a) {
  const Pol Pp = Pol::Pos, Nn = Pol::Neg;
  int np = a.pos.size, nn = a.neg.size;
  auto R = [&](Val x, Val y) { return a.related(x, y); };
  auto T = [&](Op o, Var v, Val x, Val y) { return a.apply({o, v}, x, y); };
  // result part of a signature
  auto range = [&](OpKey k) {
    const Signature& s = signatures().at(k);
    int pure = s.res == Pp ? a.P.size : a.N.size;
    return s.shifted ? std::make_pair(pure, a.size(s.res)) : std::make_pair(0, pure);
  };
  auto fill = [&](OpKey k, const std::function<bool(Val, Val, Val)>& good) {
    const Signature& s = signatures().at(k);
    auto [lo, hi] = range(k);
    std::vector<int> t;
    for (int x = 0; x < a.size(s.arg0); ++x)
      for (int y = 0; y < a.size(s.arg1); ++y) {
        int found = -1;
        for (int v = lo; v < hi && found < 0; ++v)
          if (good({s.arg0, x}, {s.arg1, y}, {s.res, v})) found = v;
        if (found < 0) return false;
        t.push_back(found);
      }
    a.ops[k] = t;
    return true;
  };
  auto forallP = [&](const std::function<bool(Val)>& f) {
    for (int i = 0; i < np; ++i)
      if (!f({Pp, i})) return false;
    return true;
  };
  auto forallN = [&](const std::function<bool(Val)>& f) {
    for (int i = 0; i < nn; ++i)
      if (!f({Nn, i})) return false;
    return true;
  };
  const Var O = Var::None, L = Var::L, Rv = Var::R;
  return fill({Op::Under, O}, [&](Val P, Val N, Val x) { return forallP([&](Val Q) { return R(Q, x) == R(T(Op::Otimes, O, P, Q), N); }); }) &&
         fill({Op::Over, O}, [&](Val N, Val Q, Val x) { return forallP([&](Val P) { return R(P, x) == R(T(Op::Otimes, O, P, Q), N); }); }) &&
         fill({Op::Under, Rv}, [&](Val P, Val S, Val x) { return forallP([&](Val Q) { return R(Q, x) == R(T(Op::Otimes, O, P, Q), S); }); }) &&
         fill({Op::Over, L}, [&](Val S, Val Q, Val x) { return forallP([&](Val P) { return R(P, x) == R(T(Op::Otimes, O, P, Q), S); }); }) &&
         fill({Op::Otimes, L}, [&](Val Lv, Val Q, Val x) { return forallN([&](Val N) { return R(x, N) == R(Lv, T(Op::Over, O, N, Q)); }); }) &&
         fill({Op::Under, L}, [&](Val Lv, Val N, Val x) { return forallP([&](Val Q) { return R(Q, x) == R(T(Op::Otimes, L, Lv, Q), N); }); }) &&
         fill({Op::Otimes, Rv}, [&](Val P, Val Lv, Val x) { return forallN([&](Val N) { return R(x, N) == R(Lv, T(Op::Under, O, P, N)); }); }) &&
         fill({Op::Over, Rv}, [&](Val N, Val Lv, Val x) { return forallP([&](Val P) { return R(P, x) == R(T(Op::Otimes, Rv, P, Lv), N); }); }) &&
         fill({Op::Oslash, O}, [&](Val P, Val N, Val x) { return forallN([&](Val M) { return R(x, M) == R(P, T(Op::Oplus, O, M, N)); }); }) &&
         fill({Op::Obslash, O}, [&](Val M, Val P, Val x) { return forallN([&](Val N) { return R(x, N) == R(P, T(Op::Oplus, O, M, N)); }); }) &&
         fill({Op::Oslash, L}, [&](Val Lv, Val N, Val x) { return forallN([&](Val M) { return R(x, M) == R(Lv, T(Op::Oplus, O, M, N)); }); }) &&
         fill({Op::Obslash, Rv}, [&](Val M, Val Lv, Val x) { return forallN([&](Val N) { return R(x, N) == R(Lv, T(Op::Oplus, O, M, N)); }); }) &&
         fill({Op::Oplus, Rv}, [&](Val M, Val S, Val x) { return forallP([&](Val P) { return R(P, x) == R(T(Op::Obslash, O, M, P), S); }); }) &&
         fill({Op::Oslash, Rv}, [&](Val P, Val S, Val x) { return forallN([&](Val M) { return R(x, M) == R(P, T(Op::Oplus, Rv, M, S)); }); }) &&
         fill({Op::Oplus, L}, [&](Val S, Val N, Val x) { return forallP([&](Val P) { return R(P, x) == R(T(Op::Oslash, O, P, N), S); }); }) &&
         fill({Op::Obslash, L}, [&](Val S, Val P, Val x) { return forallN([&](Val N) { return R(x, N) == R(P, T(Op::Oplus, L, S, N)); }); });
}

}  // namespace

std::optional<FiniteFPLG> random_fplg(std::mt19937& rng, int maxSize, int attempts) {
  std::uniform_int_distribution<int> sz(1, maxSize);
  std::uniform_int_distribution<int> pureSz(std::min(2, maxSize), maxSize);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    FiniteFPLG a;
    // resample each pair of parts until some shift on it has an adjoint
    auto adjoint_pairs = [&](FinitePoset& pure, FinitePoset& shifted, bool pureFirst) {
      std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
      for (int tries = 0; tries < 50 && out.empty(); ++tries) {
        pure = random_poset(rng, pureSz(rng));
        shifted = random_poset(rng, sz(rng));
        const FinitePoset& from = pureFirst ? pure : shifted;
        const FinitePoset& to = pureFirst ? shifted : pure;
        for (const auto& f : all_maps(from.size, to.size))
          if (monotone_map(from, to, f))
            if (auto g = right_adjoint(from, to, f)) out.emplace_back(f, *g);
      }
      return out;
    };
    auto ups = adjoint_pairs(a.P, a.Nd, true);
    auto upls = adjoint_pairs(a.N, a.Pd, false);
    if (ups.empty() || upls.empty()) continue;
    std::tie(a.up, a.dnr) = pick(rng, ups);
    std::tie(a.upl, a.dn) = pick(rng, upls);
    a.dotb = pick(rng, all_weakenings(a.Nd, a.N));
    a.w = WeakRel::empty(a.P.size, a.N.size);
    for (int p = 0; p < a.P.size; ++p)
      for (int n = 0; n < a.N.size; ++n) a.w.set(p, n, a.dotb(a.up[static_cast<std::size_t>(p)], n));
    std::vector<WeakRel> dotrs;
    for (const auto& r : all_weakenings(a.P, a.Pd)) {
      bool ok = true;
      for (int p = 0; p < a.P.size && ok; ++p)
        for (int n = 0; n < a.N.size && ok; ++n) ok = r(p, a.dn[static_cast<std::size_t>(n)]) == a.w(p, n);
      if (ok) dotrs.push_back(r);
    }
    if (dotrs.empty()) continue;
    a.dotr = pick(rng, dotrs);
    a.complete();
    // of a few candidate tables keep the one with the most distinct entries
    auto varied = [&](const FinitePoset& dom, int hi, auto good) {
      std::optional<std::vector<int>> best;
      std::size_t spread = 0;
      for (int k = 0; k < 4; ++k) {
        auto t = random_table(rng, dom, hi, good);
        if (!t) break;
        std::size_t d = std::set<int>(t->begin(), t->end()).size();
        if (!best || d > spread) {
          best = t;
          spread = d;
        }
      }
      return best;
    };
    auto ot = varied(a.pos, a.P.size, [&](const std::vector<int>& g) { return good_times_slice(a, g); });
    if (!ot) continue;
    auto op = varied(a.neg, a.N.size, [&](const std::vector<int>& g) { return good_plus_slice(a, g); });
    if (!ot || !op) continue;
    a.ops[{Op::Otimes, Var::None}] = *ot;
    a.ops[{Op::Oplus, Var::None}] = *op;
    if (!solve_ops(a)) continue;
    if (!check_fplg_axioms(a).ok) continue;
    a.name = "random";
    return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- text format

std::string serialize(const FiniteFPLG& a) {
  std::ostringstream os;
  os << "fplg " << (a.name.empty() ? "unnamed" : a.name) << "\n";
  for (auto [name, p] : {std::pair<const char*, const FinitePoset*>{"P", &a.P}, {"Pd", &a.Pd}, {"N", &a.N}, {"Nd", &a.Nd}}) {
    os << "poset " << name << " " << p->size << "\n" << rel_matrix(from_poset(*p));
  }
  for (auto [name, f] : {std::pair<const char*, const std::vector<int>*>{"up", &a.up}, {"dnr", &a.dnr}, {"upl", &a.upl}, {"dn", &a.dn}}) {
    os << "map " << name;
    for (int x : *f) os << " " << x;
    os << "\n";
  }
  for (auto [name, r] : {std::pair<const char*, const WeakRel*>{"dotr", &a.dotr}, {"w", &a.w}, {"dotb", &a.dotb}})
    os << "rel " << name << "\n" << rel_matrix(*r);
  for (const auto& k : all_op_keys()) {
    const Signature& s = signatures().at(k);
    int cols = a.size(s.arg1);
    os << "op " << op_name(k) << "\n";
    const auto& t = a.ops.at(k);
    for (std::size_t i = 0; i < t.size(); ++i) os << t[i] << ((static_cast<int>(i) + 1) % cols ? " " : "\n");
  }
  return os.str();
}

FiniteFPLG parse_algebra(const std::string& text) {
  std::istringstream lines(text);
  std::ostringstream clean;
  std::string line;
  while (std::getline(lines, line)) {
    auto h = line.find('#');
    clean << (h == std::string::npos ? line : line.substr(0, h)) << "\n";
  }
  std::istringstream in(clean.str());
  FiniteFPLG a;
  std::string word;
  auto read_ints = [&](std::size_t n, const std::string& what) {
    std::vector<int> v(n);
    for (auto& x : v)
      if (!(in >> x)) throw AlgebraError("truncated data in " + what);
    return v;
  };
  std::set<std::string> seen;
  if (!(in >> word) || word != "fplg") throw AlgebraError("expected 'fplg <name>' header");
  in >> a.name;
  while (in >> word) {
    std::string name;
    in >> name;
    if (!seen.insert(word + " " + name).second) throw AlgebraError("duplicate section " + word + " " + name);
    if (word == "poset") {
      int n;
      if (!(in >> n) || n < 1 || n > 16) throw AlgebraError("bad poset size for " + name);
      FinitePoset p{n, {}};
      for (int x : read_ints(static_cast<std::size_t>(n * n), name)) p.leq.push_back(x ? 1 : 0);
      if (name == "P") a.P = p;
      else if (name == "Pd") a.Pd = p;
      else if (name == "N") a.N = p;
      else if (name == "Nd") a.Nd = p;
      else throw AlgebraError("unknown poset " + name);
    } else if (word == "map") {
      std::map<std::string, std::pair<std::vector<int>*, int>> maps = {
          {"up", {&a.up, a.P.size}}, {"dnr", {&a.dnr, a.Nd.size}}, {"upl", {&a.upl, a.Pd.size}}, {"dn", {&a.dn, a.N.size}}};
      auto it = maps.find(name);
      if (it == maps.end()) throw AlgebraError("unknown map " + name);
      *it->second.first = read_ints(static_cast<std::size_t>(it->second.second), name);
    } else if (word == "rel") {
      std::map<std::string, std::tuple<WeakRel*, int, int>> rels = {{"dotr", {&a.dotr, a.P.size, a.Pd.size}},
                                                                   {"w", {&a.w, a.P.size, a.N.size}},
                                                                   {"dotb", {&a.dotb, a.Nd.size, a.N.size}}};
      auto it = rels.find(name);
      if (it == rels.end()) throw AlgebraError("unknown relation " + name);
      auto [r, rows, cols] = it->second;
      *r = WeakRel::empty(rows, cols);
      auto v = read_ints(static_cast<std::size_t>(rows * cols), name);
      for (std::size_t i = 0; i < v.size(); ++i) r->rel[i] = v[i] ? 1 : 0;
    } else if (word == "op") {
      auto k = op_key(name);
      if (!k) throw AlgebraError("unknown operation " + name);
      const Signature& s = signatures().at(*k);
      auto sz = [&](Pol p) { return p == Pol::Pos ? a.P.size + a.Pd.size : a.N.size + a.Nd.size; };
      a.ops[*k] = read_ints(static_cast<std::size_t>(sz(s.arg0) * sz(s.arg1)), name);
    } else {
      throw AlgebraError("unknown section '" + word + "'");
    }
  }
  for (const char* need : {"poset P", "poset Pd", "poset N", "poset Nd", "map up", "map dnr", "map upl", "map dn",
                           "rel dotr", "rel w", "rel dotb"})
    if (!seen.count(need)) throw AlgebraError(std::string("missing section ") + need);
  for (const auto& k : all_op_keys())
    if (!a.ops.count(k)) throw AlgebraError("missing section op " + op_name(k));
  a.complete();
  return a;
}

FiniteFPLG load_algebra(const std::string& spec) {
  if (spec == "builtin:chain2") return from_lg(chain_lg(2), "chain2");
  if (spec == "builtin:chain3") return from_lg(chain_lg(3), "chain3");
  if (spec == "builtin:bool4") return from_lg(boolean_lg(2), "bool4");
  if (spec == "builtin:trivial") return from_lg(chain_lg(1), "trivial");
  if (spec.rfind("builtin:", 0) == 0) throw AlgebraError("unknown builtin algebra " + spec);
  std::ifstream f(spec);
  if (!f) throw AlgebraError("cannot open " + spec);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_algebra(ss.str());
}

// ---------------------------------------------------------------- interpretation

namespace {

Val eval_with(const Term& t, const FiniteFPLG& a, const std::function<Val(const Term&)>& leaf) {
  if (t->op == Op::Atom || t->op == Op::Meta) return leaf(t);
  auto need = [&](Val v, Pol p, bool shifted) {
    if (v.pol != p || a.shifted(v) != shifted) throw AlgebraError("ill-sorted argument in " + render(t));
  };
  if (t->kids.size() == 1) {
    Val x = eval_with(t->kids[0], a, leaf);
    switch (t->op) {
      case Op::Up: need(x, Pol::Pos, false); return {Pol::Neg, a.N.size + a.up[static_cast<std::size_t>(x.idx)]};
      case Op::Down: need(x, Pol::Neg, false); return {Pol::Pos, a.P.size + a.dn[static_cast<std::size_t>(x.idx)]};
      case Op::UpL: need(x, Pol::Pos, true); return {Pol::Neg, a.upl[static_cast<std::size_t>(x.idx - a.P.size)]};
      case Op::DownR: need(x, Pol::Neg, true); return {Pol::Pos, a.dnr[static_cast<std::size_t>(x.idx - a.N.size)]};
      default: throw AlgebraError("unexpected unary node in " + render(t));
    }
  }
  Val x = eval_with(t->kids[0], a, leaf), y = eval_with(t->kids[1], a, leaf);
  return a.apply({t->op, t->var}, x, y);
}

}  // namespace

Val eval(const Term& t, const FiniteFPLG& a, const Valuation& v) {
  return eval_with(t, a, [&](const Term& leaf) -> Val {
    if (leaf->op == Op::Meta) throw AlgebraError("metavariable in eval");
    auto it = v.find(leaf->name);
    if (it == v.end()) throw AlgebraError("valuation misses atom " + leaf->name);
    int lim = leaf->atomPol == Pol::Pos ? a.P.size : a.N.size;
    if (it->second < 0 || it->second >= lim) throw AlgebraError("value out of range for atom " + leaf->name);
    return {leaf->atomPol, it->second};
  });
}

bool interpret(const Sequent& s, const FiniteFPLG& a, const Valuation& v) {
  Val l = eval(s.pre, a, v), r = eval(s.suc, a, v);
  if (l.pol == Pol::Neg && r.pol == Pol::Pos) throw AlgebraError("no turnstile from negative to positive");
  return a.related(l, r);
}

void for_each_valuation(const Sequent& s, const FiniteFPLG& a, const std::function<bool(const Valuation&)>& f) {
  std::set<std::pair<std::string, Pol>> atoms;
  atoms_of(s.pre, atoms);
  atoms_of(s.suc, atoms);
  std::vector<std::pair<std::string, int>> slots;
  for (const auto& [name, pol] : atoms) slots.emplace_back(name, pol == Pol::Pos ? a.P.size : a.N.size);
  Valuation v;
  for (const auto& [name, _] : slots) v[name] = 0;
  while (true) {
    if (!f(v)) return;
    std::size_t i = 0;
    while (i < slots.size() && ++v[slots[i].first] == slots[i].second) v[slots[i++].first] = 0;
    if (i == slots.size()) return;
  }
}

bool valid(const Sequent& s, const FiniteFPLG& a) {
  bool ok = true;
  for_each_valuation(s, a, [&](const Valuation& v) { return ok = interpret(s, a, v); });
  return ok;
}

std::optional<Countermodel> find_countermodel(const Sequent& s, const std::vector<FiniteFPLG>& algebras) {
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    std::optional<Valuation> bad;
    for_each_valuation(s, algebras[i], [&](const Valuation& v) {
      if (interpret(s, algebras[i], v)) return true;
      bad = v;
      return false;
    });
    if (bad) return Countermodel{i, *bad};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- soundness

namespace {

// Values of structures of depth ≤ depth over arbitrary atoms, per polarity.
std::pair<std::vector<char>, std::vector<char>> reachable(const FiniteFPLG& a, int depth) {
  std::vector<char> pos(static_cast<std::size_t>(a.pos.size), 0), neg(static_cast<std::size_t>(a.neg.size), 0);
  for (int i = 0; i < a.P.size; ++i) pos[static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < a.N.size; ++i) neg[static_cast<std::size_t>(i)] = 1;
  for (int d = 0; d < depth; ++d) {
    auto p2 = pos, n2 = neg;
    auto mark = [&](Val v) { (v.pol == Pol::Pos ? p2 : n2)[static_cast<std::size_t>(v.idx)] = 1; };
    for (int i = 0; i < a.pos.size; ++i) {
      if (!pos[static_cast<std::size_t>(i)]) continue;
      if (i < a.P.size) mark({Pol::Neg, a.N.size + a.up[static_cast<std::size_t>(i)]});
      else mark({Pol::Neg, a.upl[static_cast<std::size_t>(i - a.P.size)]});
    }
    for (int i = 0; i < a.neg.size; ++i) {
      if (!neg[static_cast<std::size_t>(i)]) continue;
      if (i < a.N.size) mark({Pol::Pos, a.P.size + a.dn[static_cast<std::size_t>(i)]});
      else mark({Pol::Pos, a.dnr[static_cast<std::size_t>(i - a.N.size)]});
    }
    for (const auto& [k, s] : signatures()) {
      const auto& s0 = s.arg0 == Pol::Pos ? pos : neg;
      const auto& s1 = s.arg1 == Pol::Pos ? pos : neg;
      for (int x = 0; x < a.size(s.arg0); ++x)
        for (int y = 0; y < a.size(s.arg1); ++y)
          if (s0[static_cast<std::size_t>(x)] && s1[static_cast<std::size_t>(y)]) mark(a.apply(k, {s.arg0, x}, {s.arg1, y}));
    }
    pos = std::move(p2);
    neg = std::move(n2);
  }
  return {pos, neg};
}

// Sort of a rule metavariable from its name: the letter gives the polarity,
// a trailing 'o' allows both purities, 'd' asks for shifted, none for pure.
std::pair<Pol, int> meta_sort(const std::string& name) {
  static const std::string posLetters = "pPQXYZ";
  char c = name[0];
  Pol pol = posLetters.find(c) != std::string::npos ? Pol::Pos : Pol::Neg;
  char last = name.back();
  int purity = name.size() > 1 && last == 'o' ? 2 : name.size() > 1 && last == 'd' ? 1 : 0;
  return {pol, purity};
}

void metas_of(const Term& t, std::set<std::string>& out) {
  if (t->op == Op::Meta) out.insert(t->name);
  for (const auto& k : t->kids) metas_of(k, out);
}

}  // namespace

SoundnessReport check_schema_soundness(const std::string& label, const std::vector<Sequent>& premises,
                                       const Sequent& conclusion, const FiniteFPLG& a, int depth) {
  SoundnessReport rep;
  std::set<std::string> names;
  for (const auto& s : premises) {
    metas_of(s.pre, names);
    metas_of(s.suc, names);
  }
  metas_of(conclusion.pre, names);
  metas_of(conclusion.suc, names);
  auto [rpos, rneg] = reachable(a, depth);
  std::vector<std::string> vars(names.begin(), names.end());
  std::vector<std::vector<Val>> ranges;
  for (const auto& n : vars) {
    auto [pol, purity] = meta_sort(n);
    const auto& reach = pol == Pol::Pos ? rpos : rneg;
    int pure = pol == Pol::Pos ? a.P.size : a.N.size;
    std::vector<Val> r;
    for (int i = 0; i < a.size(pol); ++i) {
      bool shifted = i >= pure;
      if (!reach[static_cast<std::size_t>(i)]) continue;
      if ((purity == 0 && shifted) || (purity == 1 && !shifted)) continue;
      r.push_back({pol, i});
    }
    if (std::islower(static_cast<unsigned char>(n[0])) && n.size() == 1) {
      r.erase(std::remove_if(r.begin(), r.end(), [&](Val v) { return a.shifted(v); }), r.end());
    }
    if (r.empty()) return rep;
    ranges.push_back(r);
  }
  std::map<std::string, Val> env;
  auto leaf = [&](const Term& t) -> Val {
    if (t->op != Op::Meta) throw AlgebraError("concrete atom in rule schema");
    return env.at(t->name);
  };
  auto holds = [&](const Sequent& s) {
    Val l = eval_with(s.pre, a, leaf), r = eval_with(s.suc, a, leaf);
    if (l.pol == Pol::Neg && r.pol == Pol::Pos) throw AlgebraError("no turnstile from negative to positive");
    return a.related(l, r);
  };
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = ranges[i][idx[i]];
    ++rep.checks;
    try {
      bool prem = std::all_of(premises.begin(), premises.end(), holds);
      if (prem && !holds(conclusion)) {
        std::string at;
        for (const auto& [k, v] : env) at += " " + k + "=" + (v.pol == Pol::Pos ? "+" : "-") + std::to_string(v.idx);
        rep.violations.push_back(label + " on " + a.name + ":" + at);
      }
    } catch (const AlgebraError& e) {
      rep.violations.push_back(label + ": " + e.what());
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == ranges[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return rep;
}

SoundnessReport check_rule_soundness(const RuleId& rule, const FiniteFPLG& a, int depth) {
  const RuleInfo* info = find_rule(rule);
  if (!info) throw AlgebraError("unknown rule " + to_string(rule));
  return check_schema_soundness(to_string(rule), info->premises, info->conclusion, a, depth);
}

}  // namespace lg
