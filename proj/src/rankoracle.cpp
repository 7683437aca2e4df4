#include "ncb/rankoracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ncb {

bool isSmallPrime(int q) {
  if (q < 2 || q > 251)
    return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0)
      return false;
  return true;
}

namespace {

int inverse(int a, int q) {
  // Fermat: a^(q-2) mod q.
  int r = 1, b = a % q;
  for (int e = q - 2; e > 0; e >>= 1) {
    if (e & 1)
      r = r * b % q;
    b = b * b % q;
  }
  return r;
}

} // namespace

int gfRank(std::vector<GfRow> rows, int q) {
  if (rows.empty())
    return 0;
  int cols = int(rows[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < int(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < int(rows.size()); ++i)
      if (rows[i][c] % q) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(rows[r], rows[piv]);
    int inv = inverse(rows[r][c], q);
    for (int &x : rows[r])
      x = x * inv % q;
    for (int i = r + 1; i < int(rows.size()); ++i) {
      int f = rows[i][c] % q;
      if (!f)
        continue;
      for (int j = c; j < cols; ++j)
        rows[i][j] = ((rows[i][j] - f * rows[r][j]) % q + q) % q;
    }
    ++r;
  }
  return r;
}

int LinearCode::totalDim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int LinearCode::offset(int session) const {
  return std::accumulate(dims.begin(), dims.begin() + session, 0);
}

std::vector<GfRow> LinearCode::sessionBlock(int session) const {
  std::vector<GfRow> out;
  int off = offset(session), k = totalDim();
  for (int i = 0; i < dims.at(session); ++i) {
    GfRow row(k, 0);
    row[off + i] = 1;
    out.push_back(row);
  }
  return out;
}

namespace {

std::vector<GfRow> stack(const LinearCode &code, uint64_t vars) {
  std::vector<GfRow> rows;
  int ns = int(code.dims.size());
  for (int s = 0; s < ns; ++s)
    if (vars >> s & 1)
      for (auto &r : code.sessionBlock(s))
        rows.push_back(std::move(r));
  for (size_t e = 0; e < code.edges.size(); ++e)
    if (vars >> (ns + e) & 1)
      rows.insert(rows.end(), code.edges[e].begin(), code.edges[e].end());
  return rows;
}

uint64_t inputs(const Network &net, int node) {
  uint64_t m = 0;
  for (int s = 0; s < net.numSessions(); ++s)
    if (net.sessions[s].source == node)
      m |= uint64_t(1) << s;
  for (int f : net.inEdges(node))
    m |= uint64_t(1) << (net.numSessions() + f);
  return m;
}

int maxDim(const Network &net, const LinearCode &code, int e) {
  Rational c = net.edges[e].capacity * code.scale;
  return int(boost::multiprecision::mpz_int(numerator(c) / denominator(c)));
}

} // namespace

int rank(const LinearCode &code, uint64_t vars) { return gfRank(stack(code, vars), code.q); }

int rankNodes(const LinearCode &code, const Fdg &g, const NodeSet &nodes) {
  uint64_t vars = 0;
  int ns = int(code.dims.size());
  nodes.forEach([&](int v) {
    const FdgNode &n = g.node(v);
    if (n.kind == NodeKind::Source || n.kind == NodeKind::Estimate)
      vars |= uint64_t(1) << n.session;
    else if (n.kind == NodeKind::EdgeVar)
      vars |= uint64_t(1) << (ns + n.edge);
    else
      throw std::invalid_argument("plain FDG nodes have no code variable");
  });
  return rank(code, vars);
}

bool checkCode(const LinearCode &code, const Network &net) {
  if (!isSmallPrime(code.q))
    throw std::invalid_argument("field size must be a prime up to 251");
  if (int(code.dims.size()) != net.numSessions() ||
      int(code.edges.size()) != net.numEdges() || code.scale < 1)
    throw std::invalid_argument("code dimensions do not match the network");
  if (net.numSessions() + net.numEdges() > 64)
    throw std::invalid_argument("network too large for the rank oracle");
  int k = code.totalDim();
  for (const auto &m : code.edges)
    for (const auto &row : m)
      if (int(row.size()) != k)
        throw std::invalid_argument("edge row length differs from message dimension");

  for (int e = 0; e < net.numEdges(); ++e) {
    if (int(code.edges[e].size()) > maxDim(net, code, e))
      return false;
    uint64_t in = inputs(net, net.edges[e].tail);
    uint64_t self = uint64_t(1) << (net.numSessions() + e);
    if (!verifyDetermination(code, in, self))
      return false;
  }
  for (int s = 0; s < net.numSessions(); ++s)
    for (int u : net.sessions[s].sinks) {
      uint64_t in = 0;
      for (int f : net.inEdges(u))
        in |= uint64_t(1) << (net.numSessions() + f);
      if (!verifyDetermination(code, in, uint64_t(1) << s))
        return false;
    }
  return true;
}

bool verifyDetermination(const LinearCode &code, uint64_t a, uint64_t b) {
  return rank(code, a | b) == rank(code, a);
}

std::optional<LinearCode> randomCode(const Network &net, int q,
                                     const std::vector<int> &dims, int attempts,
                                     uint64_t seed, int scale) {
  if (!isSmallPrime(q))
    throw std::invalid_argument("field size must be a prime up to 251");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, q - 1);
  // Tails in topological order, so every input is built before it is used.
  std::vector<int> order(net.numEdges());
  std::iota(order.begin(), order.end(), 0);
  {
    std::vector<int> depth(net.numNodes(), 0);
    for (int pass = 0; pass < net.numNodes(); ++pass)
      for (const auto &e : net.edges)
        depth[e.head] = std::max(depth[e.head], depth[e.tail] + 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return depth[net.edges[a].tail] < depth[net.edges[b].tail];
    });
  }
  for (int t = 0; t < attempts; ++t) {
    LinearCode code;
    code.q = q;
    code.dims = dims;
    code.scale = scale;
    code.edges.assign(net.numEdges(), {});
    int k = code.totalDim();
    for (int e : order) {
      std::vector<GfRow> in = stack(code, inputs(net, net.edges[e].tail));
      int d = std::min(maxDim(net, code, e), k);
      for (int r = 0; r < d; ++r) {
        GfRow row(k, 0);
        for (const auto &src : in) {
          int c = sym(rng);
          for (int j = 0; j < k; ++j)
            row[j] = (row[j] + c * src[j]) % q;
        }
        code.edges[e].push_back(row);
      }
    }
    if (checkCode(code, net))
      return code;
  }
  return std::nullopt;
}

bool psiContainmentProbe(const Network &net, uint64_t edgeMask, int edge,
                         const std::vector<LinearCode> &codes) {
  int ns = net.numSessions();
  uint64_t a = edgeMask << ns;
  uint64_t e = uint64_t(1) << (ns + edge);
  for (const auto &code : codes)
    if (rank(code, a | e) > rank(code, a))
      return true;
  return false;
}

Rational achievedRate(const LinearCode &code, int session) {
  return Rational(code.dims.at(session), code.scale);
}

std::string dumpCode(const LinearCode &code) {
  std::string out = "q=" + std::to_string(code.q) + "\ndims=";
  for (size_t s = 0; s < code.dims.size(); ++s)
    out += (s ? "," : "") + std::to_string(code.dims[s]);
  out += "\n";
  if (code.scale != 1)
    out += "scale=" + std::to_string(code.scale) + "\n";
  for (size_t e = 0; e < code.edges.size(); ++e) {
    out += "e" + std::to_string(e + 1) + ":";
    for (size_t r = 0; r < code.edges[e].size(); ++r) {
      out += r ? " ;" : "";
      for (int x : code.edges[e][r])
        out += " " + std::to_string(x);
    }
    out += "\n";
  }
  return out;
}

} // namespace ncb
