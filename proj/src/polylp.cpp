#include "ncb/polylp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ncb {

Rational LinearConstraint::lhs(const std::vector<Rational> &h) const {
  Rational sum = 0;
  for (const auto &[coord, c] : coeffs)
    sum += c * h.at(coord);
  return sum;
}

bool LinearConstraint::satisfiedBy(const std::vector<Rational> &h) const {
  Rational v = lhs(h);
  switch (rel) {
  case Relation::Ge:
    return v >= rhs;
  case Relation::Le:
    return v <= rhs;
  case Relation::Eq:
    return v == rhs;
  }
  return false;
}

LinearConstraint makeConstraint(const std::vector<std::pair<uint32_t, Rational>> &terms,
                                Relation rel, Rational rhs) {
  std::map<uint32_t, Rational> merged;
  for (const auto &[coord, c] : terms)
    if (coord != 0)
      merged[coord] += c;
  LinearConstraint out;
  for (auto &[coord, c] : merged)
    if (c != 0)
      out.coeffs.emplace_back(coord, c);
  out.rel = rel;
  out.rhs = std::move(rhs);
  return out;
}

std::vector<LinearConstraint> elementalInequalities(int n) {
  if (n < 1 || n > 14)
    throw std::invalid_argument("elemental inequalities need 1 <= n <= 14, got " +
                                std::to_string(n));
  uint32_t full = (uint32_t(1) << n) - 1;
  std::vector<LinearConstraint> rows;
  rows.reserve(elementalCount(n));
  for (int i = 0; i < n; ++i)
    rows.push_back(makeConstraint({{full, 1}, {full & ~(uint32_t(1) << i), -1}},
                                  Relation::Ge));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      uint32_t ij = (uint32_t(1) << i) | (uint32_t(1) << j);
      uint32_t rest = full & ~ij;
      for (uint32_t c = rest;; c = (c - 1) & rest) {
        rows.push_back(makeConstraint({{c | uint32_t(1) << i, 1},
                                       {c | uint32_t(1) << j, 1},
                                       {c | ij, -1},
                                       {c, -1}},
                                      Relation::Ge));
        if (c == 0)
          break;
      }
    }
  return rows;
}

LinearConstraint ingletonRow(uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  return makeConstraint({{a | b, 1},
                         {a | c, 1},
                         {a | d, 1},
                         {b | c, 1},
                         {b | d, 1},
                         {a, -1},
                         {b, -1},
                         {c | d, -1},
                         {a | b | c, -1},
                         {a | b | d, -1}},
                        Relation::Ge);
}

std::vector<LinearConstraint> ingletonInequalities(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("Ingleton generator needs 1 <= n <= 6, got " +
                                std::to_string(n));
  std::vector<LinearConstraint> rows;
  int total = 1;
  for (int i = 0; i < n; ++i)
    total *= 6;
  for (int code = 0; code < total; ++code) {
    uint32_t part[6] = {}; // A, B, C, D, Z, unused
    for (int i = 0, x = code; i < n; ++i, x /= 6)
      part[x % 6] |= uint32_t(1) << i;
    if (!part[0] || !part[1] || !part[2] || !part[3])
      continue;
    if (part[0] > part[1] || part[2] > part[3])
      continue;
    uint32_t z = part[4];
    rows.push_back(ingletonRow(part[0] | z, part[1] | z, part[2] | z, part[3] | z));
  }
  return rows;
}

uint64_t ingletonClosedForm(int n) {
  auto pw = [](uint64_t b, int e) {
    uint64_t r = 1;
    while (e--)
      r *= b;
    return r;
  };
  // Inclusion-exclusion over empty parts, divided by the 4 swaps.
  return (pw(6, n) - 4 * pw(5, n) + 6 * pw(4, n) - 4 * pw(3, n) + pw(2, n)) / 4;
}

namespace {

uint32_t bit(int i) { return uint32_t(1) << i; }

void checkGround(const Network &net, int guard) {
  int n = net.numSessions() + net.numEdges();
  if (n > guard || n > 14)
    throw std::invalid_argument("LP ground set of " + std::to_string(n) +
                                " variables exceeds guard " + std::to_string(guard));
}

/// Encoding, decoding and capacity rows shared by both LPs.
void addNetworkRows(const Network &net, std::vector<LinearConstraint> &rows) {
  auto inMask = [&](int node) {
    uint32_t m = 0;
    for (int f : net.inEdges(node))
      m |= bit(groundVar(net, f));
    return m;
  };
  for (int e = 0; e < net.numEdges(); ++e) {
    int tail = net.edges[e].tail;
    uint32_t parents = inMask(tail);
    for (int s = 0; s < net.numSessions(); ++s)
      if (net.sessions[s].source == tail)
        parents |= bit(s);
    uint32_t self = bit(groundVar(net, e));
    rows.push_back(makeConstraint({{parents | self, 1}, {parents, -1}}, Relation::Eq));
  }
  for (int s = 0; s < net.numSessions(); ++s)
    for (int u : net.sessions[s].sinks) {
      uint32_t in = inMask(u);
      rows.push_back(makeConstraint({{in | bit(s), 1}, {in, -1}}, Relation::Eq));
    }
  for (int e = 0; e < net.numEdges(); ++e)
    rows.push_back(makeConstraint({{bit(groundVar(net, e)), 1}}, Relation::Le,
                                  net.edges[e].capacity));
}

} // namespace

LpProblem buildIndependentLp(const Network &net, const std::vector<Rational> &weights,
                             int guard) {
  checkGround(net, guard);
  if (int(weights.size()) != net.numSessions())
    throw std::invalid_argument("one weight per session required");
  LpProblem p;
  p.index.n = net.numSessions() + net.numEdges();
  p.rows = elementalInequalities(p.index.n);
  p.polymatroidal = true;
  std::vector<std::pair<uint32_t, Rational>> indep{{net.allSessions(), 1}};
  for (int s = 0; s < net.numSessions(); ++s)
    indep.emplace_back(bit(s), -1);
  if (auto row = makeConstraint(indep, Relation::Eq); !row.coeffs.empty())
    p.rows.push_back(row);
  addNetworkRows(net, p.rows);
  for (int s = 0; s < net.numSessions(); ++s) {
    if (weights[s] < 0)
      throw std::invalid_argument("weights must be nonnegative");
    if (weights[s] != 0)
      p.objective.emplace_back(bit(s), weights[s]);
  }
  return p;
}

LpProblem buildCorrelatedLp(const Network &net, const std::vector<Rational> &jointEntropies,
                            const std::vector<std::pair<uint32_t, Rational>> &objective,
                            int guard) {
  checkGround(net, guard);
  int ns = net.numSessions();
  if (jointEntropies.size() != (size_t(1) << ns))
    throw std::invalid_argument("joint entropies must cover every session subset");
  std::vector<Rational> hs = jointEntropies;
  hs[0] = 0;
  for (const auto &row : elementalInequalities(ns))
    if (!row.satisfiedBy(hs))
      throw std::invalid_argument("joint entropies are not polymatroidal");
  LpProblem p;
  p.index.n = ns + net.numEdges();
  p.rows = elementalInequalities(p.index.n);
  p.polymatroidal = true;
  for (uint32_t w = 1; w < (uint32_t(1) << ns); ++w)
    p.rows.push_back(makeConstraint({{w, 1}}, Relation::Eq, hs[w]));
  addNetworkRows(net, p.rows);
  p.objective = objective;
  return p;
}

namespace {

/// Coordinates merged by the functional-dependence rows of a polymatroidal
/// LP: h(X) = h(cl(X)) for every feasible h.
struct Quotient {
  std::vector<uint32_t> cl;   ///< closure of every mask
  std::vector<int> var;       ///< solver variable of each mask, -1 if h = 0
  std::vector<uint32_t> reps; ///< closed set of each solver variable
};

Quotient buildQuotient(const LpProblem &p) {
  uint32_t size = uint32_t(1) << p.index.n;
  std::vector<std::pair<uint32_t, uint32_t>> rules; // premise -> addition
  for (const auto &row : p.rows) {
    if (row.rel != Relation::Eq || row.rhs != 0)
      continue;
    if (row.coeffs.size() == 1) {
      rules.emplace_back(0, row.coeffs[0].first);
    } else if (row.coeffs.size() == 2 && row.coeffs[0].second == -row.coeffs[1].second) {
      uint32_t x = row.coeffs[0].first, y = row.coeffs[1].first;
      if ((x & y) == x)
        rules.emplace_back(x, y);
      else if ((x & y) == y)
        rules.emplace_back(y, x);
    }
  }
  Quotient q;
  q.cl.resize(size);
  for (uint32_t m = 0; m < size; ++m) {
    uint32_t c = m;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto &[premise, add] : rules)
        if ((premise & c) == premise && (add & ~c)) {
          c |= add;
          changed = true;
        }
    }
    q.cl[m] = c;
  }
  q.var.assign(size, -1);
  std::map<uint32_t, int> ids;
  for (uint32_t m = 1; m < size; ++m) {
    if (q.cl[m] == q.cl[0])
      continue;
    auto [it, fresh] = ids.emplace(q.cl[m], int(q.reps.size()));
    if (fresh)
      q.reps.push_back(q.cl[m]);
    q.var[m] = it->second;
  }
  return q;
}

std::string rowKey(const DenseLp::Row &r) {
  std::string k;
  for (const auto &[j, c] : r.coeffs)
    k += std::to_string(j) + ":" + formatRational(c) + " ";
  k += char('0' + int(r.rel));
  return k + formatRational(r.rhs);
}

} // namespace

LpSolution solveLp(const LpProblem &p, const SolveOptions &opts) {
  uint32_t size = uint32_t(1) << p.index.n;
  LpSolution sol;
  Quotient q;
  if (opts.presolve && p.polymatroidal) {
    q = buildQuotient(p);
  } else {
    q.cl.resize(size);
    q.var.assign(size, -1);
    for (uint32_t m = 0; m < size; ++m) {
      q.cl[m] = m;
      if (m) {
        q.var[m] = int(q.reps.size());
        q.reps.push_back(m);
      }
    }
  }

  auto mapTerms = [&](const std::vector<std::pair<uint32_t, Rational>> &terms) {
    std::map<int, Rational> merged;
    for (const auto &[coord, c] : terms) {
      if (coord >= size)
        throw std::out_of_range("coordinate outside the entropy index");
      if (q.var[coord] >= 0)
        merged[q.var[coord]] += c;
    }
    std::vector<std::pair<int, Rational>> out;
    for (auto &[j, c] : merged)
      if (c != 0)
        out.emplace_back(j, c);
    return out;
  };

  DenseLp lp;
  lp.numVars = int(q.reps.size());
  lp.objective.assign(lp.numVars, Rational(0));
  for (const auto &[j, c] : mapTerms(p.objective))
    lp.objective[j] = c;
  std::set<std::string> seen;
  for (const auto &row : p.rows) {
    DenseLp::Row r{mapTerms(row.coeffs), row.rel, row.rhs};
    if (r.coeffs.empty()) {
      LinearConstraint trivial{{}, row.rel, row.rhs};
      if (!trivial.satisfiedBy({Rational(0)})) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
      continue;
    }
    if (seen.insert(rowKey(r)).second)
      lp.rows.push_back(std::move(r));
  }
  sol.reducedVars = lp.numVars;
  sol.reducedRows = int(lp.rows.size());

  DenseResult res = solveDense(lp);
  sol.status = res.status;
  sol.pivots = res.pivots;
  if (res.status != LpStatus::Optimal)
    return sol;
  sol.optimum = res.optimum;
  sol.point.assign(size, Rational(0));
  for (uint32_t m = 1; m < size; ++m)
    if (q.var[m] >= 0)
      sol.point[m] = res.x[q.var[m]];
  return sol;
}

Rational lpRegionProbe(const Network &net, SessionSet w, int guard) {
  if (w == 0)
    return 0;
  std::vector<Rational> weights(net.numSessions(), Rational(0));
  for (int s = 0; s < net.numSessions(); ++s)
    if (w >> s & 1)
      weights[s] = 1;
  LpSolution sol = solveLp(buildIndependentLp(net, weights, guard));
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("region probe LP did not reach an optimum");
  return sol.optimum;
}

namespace {

std::string hex(uint32_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::string terms(const std::vector<std::pair<uint32_t, Rational>> &t) {
  std::string out;
  for (const auto &[coord, c] : t)
    out += (out.empty() ? "" : " ") + hex(coord) + "=" + formatRational(c);
  return out;
}

const char *relText(Relation r) {
  return r == Relation::Ge ? ">=" : r == Relation::Le ? "<=" : "=";
}

std::pair<uint32_t, Rational> parseTerm(const std::string &tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("malformed LP term '" + tok + "'");
  size_t used = 0;
  unsigned long coord = std::stoul(tok.substr(0, eq), &used, 16);
  if (used != eq)
    throw std::invalid_argument("malformed LP coordinate '" + tok + "'");
  return {uint32_t(coord), parseRational(tok.substr(eq + 1))};
}

} // namespace

std::string dumpLp(const LpProblem &p) {
  std::string out = "n=" + std::to_string(p.index.n) + "\n";
  out += "obj:" + std::string(p.objective.empty() ? "" : " ") + terms(p.objective) + "\n";
  for (const auto &r : p.rows)
    out += terms(r.coeffs) + " " + relText(r.rel) + " " + formatRational(r.rhs) + "\n";
  return out;
}

LpProblem loadLp(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  LpProblem p;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0)
    throw std::invalid_argument("LP text must start with n=<k>");
  try {
    p.index.n = std::stoi(line.substr(2));
  } catch (const std::exception &) {
    throw std::invalid_argument("malformed LP header '" + line + "'");
  }
  if (p.index.n < 1 || p.index.n > 20)
    throw std::invalid_argument("LP ground set size out of range");
  if (!std::getline(in, line) || line.rfind("obj:", 0) != 0)
    throw std::invalid_argument("LP text needs an obj: line");
  {
    std::istringstream ts(line.substr(4));
    std::string tok;
    while (ts >> tok)
      p.objective.push_back(parseTerm(tok));
  }
  while (std::getline(in, line)) {
    std::istringstream ts(line);
    std::vector<std::string> toks;
    for (std::string tok; ts >> tok;)
      toks.push_back(tok);
    if (toks.empty())
      continue;
    if (toks.size() < 3)
      throw std::invalid_argument("malformed LP row '" + line + "'");
    const std::string &rel = toks[toks.size() - 2];
    LinearConstraint r;
    if (rel == ">=")
      r.rel = Relation::Ge;
    else if (rel == "<=")
      r.rel = Relation::Le;
    else if (rel == "=")
      r.rel = Relation::Eq;
    else
      throw std::invalid_argument("unknown relation '" + rel + "'");
    r.rhs = parseRational(toks.back());
    for (size_t i = 0; i + 2 < toks.size(); ++i)
      r.coeffs.push_back(parseTerm(toks[i]));
    std::sort(r.coeffs.begin(), r.coeffs.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    p.rows.push_back(std::move(r));
  }
  // Recognize the polymatroid rows so presolve applies after a round trip.
  std::set<std::string> have;
  for (const auto &r : p.rows)
    have.insert(terms(r.coeffs) + relText(r.rel) + formatRational(r.rhs));
  p.polymatroidal = p.index.n <= 14;
  if (p.polymatroidal)
    for (const auto &r : elementalInequalities(p.index.n))
      if (!have.count(terms(r.coeffs) + relText(r.rel) + formatRational(r.rhs))) {
        p.polymatroidal = false;
        break;
      }
  return p;
}

} // namespace ncb
