#include "ncb/cli.hpp"

#include "ncb/bounds.hpp"
#include "ncb/maxsets.hpp"
#include "ncb/polylp.hpp"
#include "ncb/rankoracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace ncb {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string net;
  std::string construction = "A";
  std::string kind;
  std::string bound = "fd";
  std::string w;
  bool independent = false;
  bool improved = false;
  bool gbar = false;
  bool withEstimates = false;
  bool dump = false;
  std::string weights;
  std::string table;
  uint64_t seed = 1;
  int guard = -1;
  int q = 2;
  int attempts = 200;
  int scale = 1;
  std::string dims;
};

std::vector<std::string> splitComma(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    out.push_back(item);
  return out;
}

Network loadNetwork(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot read network document: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Network net = parseNetwork(buf.str());
  auto report = validateNetwork(net);
  if (!report.ok()) {
    std::string msg = "invalid network:";
    for (const auto &v : report.violations)
      msg += "\n  " + v;
    throw DomainError(msg);
  }
  return net;
}

ClosureKind parseKind(const Options &o) {
  std::string k = o.kind;
  if (k.empty())
    k = o.independent ? "psi" : "phiB";
  if (k == "phiA")
    return ClosureKind::PhiA;
  if (k == "phiB")
    return ClosureKind::PhiB;
  if (k == "psi")
    return ClosureKind::Psi;
  throw UsageError("unknown --kind '" + o.kind + "' (phiA, phiB, psi)");
}

SessionSet parseW(const Options &o, const Network &net) {
  if (o.w.empty() || o.w == "all")
    return net.allSessions();
  SessionSet w = 0;
  for (const auto &item : splitComma(o.w)) {
    int s = 0;
    try {
      s = std::stoi(item);
    } catch (const std::exception &) {
      throw UsageError("malformed --W entry '" + item + "'");
    }
    if (s < 1 || s > net.numSessions())
      throw UsageError("--W names unknown session " + item);
    w |= SessionSet(1) << (s - 1);
  }
  return w;
}

Region makeRegion(const std::string &name, const Options &o, const Network &net) {
  int guard = o.guard;
  if (name == "fd")
    return fdRegion(net, parseKind(o));
  if (name == "cutset")
    return guard > 0 ? cutSetRegion(net, guard) : cutSetRegion(net);
  if (name == "ns")
    return networkSharingRegion(net);
  if (name == "pde" || name == "ipde") {
    PdeOptions po;
    po.improved = name == "ipde" || o.improved;
    if (guard > 0)
      po.guard = guard;
    return pdeRegion(net, po);
  }
  if (name == "lp") {
    Region r(RegionMode::Independent, net.numSessions(), "lp");
    for (SessionSet w = 1; w <= r.full(); ++w)
      r.at(w) = guard > 0 ? lpRegionProbe(net, w, guard) : lpRegionProbe(net, w);
    return r;
  }
  throw UsageError("unknown --bound '" + name + "' (fd, cutset, ns, pde, ipde, lp)");
}

int cmdValidate(const Options &o, std::ostream &out) {
  std::ifstream in(o.net);
  if (!in)
    throw DomainError("cannot read network document: " + o.net);
  std::stringstream buf;
  buf << in.rdbuf();
  auto report = validateNetwork(parseNetwork(buf.str()));
  if (report.ok()) {
    out << "ok\n";
    return 0;
  }
  for (const auto &v : report.violations)
    out << v << "\n";
  return 1;
}

Fdg constructionOf(const Options &o, const Network &net) {
  if (o.construction == "A")
    return buildConstructionA(net);
  if (o.construction == "B")
    return buildConstructionB(net);
  throw UsageError("unknown --construction '" + o.construction + "' (A, B)");
}

int cmdFdgDump(const Options &o, std::ostream &out) {
  Network net = loadNetwork(o.net);
  Fdg g = constructionOf(o, net);
  if (o.gbar)
    g = subgraphGbar(g);
  if (!o.table.empty()) {
    std::ofstream t(o.table);
    if (!t)
      throw DomainError("cannot write id table: " + o.table);
    t << idTable(g);
  }
  out << toDot(g);
  return 0;
}

int cmdMaxsets(const Options &o, std::ostream &out) {
  Network net = loadNetwork(o.net);
  Fdg g = constructionOf(o, net);
  ClosureKind kind = o.kind.empty() && !o.independent && o.construction == "A"
                         ? ClosureKind::PhiA
                         : parseKind(o);
  if (kind != ClosureKind::PhiA && g.kind() != FdgKind::ConstructionB)
    throw UsageError("--kind " + closureKindName(kind) + " needs --construction B");
  NodeSet excluded;
  if (!o.withEstimates)
    for (int s = 0; s < g.numSessions(); ++s)
      for (int v : g.estimatesOf(s))
        excluded.insert(v);
  auto sets = allMaxSetsCyclic(g, excluded, kind);
  if (sets.preconditionFailed)
    throw DomainError("the allowed nodes do not determine the whole graph");
  out << sets.str();
  return 0;
}

int cmdBound(const Options &o, std::ostream &out) {
  Network net = loadNetwork(o.net);
  Region r = makeRegion(o.bound, o, net);
  if (o.w.empty()) {
    out << r.str();
    return 0;
  }
  SessionSet w = parseW(o, net);
  std::istringstream lines(r.str());
  // Print only the requested line, in the region format.
  auto subsets = canonicalSubsets(r.full());
  std::string line;
  for (SessionSet s : subsets) {
    std::getline(lines, line);
    if (s == w)
      out << line << "\n";
  }
  return 0;
}

int cmdLp(const Options &o, std::ostream &out) {
  Network net = loadNetwork(o.net);
  std::vector<Rational> weights(net.numSessions(), Rational(1));
  if (!o.weights.empty()) {
    auto items = splitComma(o.weights);
    if (int(items.size()) != net.numSessions())
      throw UsageError("--weights needs one entry per session");
    for (size_t i = 0; i < items.size(); ++i) {
      try {
        weights[i] = parseRational(items[i]);
      } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
      }
    }
  }
  LpProblem p = o.guard > 0 ? buildIndependentLp(net, weights, o.guard)
                            : buildIndependentLp(net, weights);
  if (o.dump) {
    out << dumpLp(p);
    return 0;
  }
  LpSolution sol = solveLp(p);
  switch (sol.status) {
  case LpStatus::Optimal:
    out << formatRational(sol.optimum) << "\n";
    return 0;
  case LpStatus::Unbounded:
    out << "unbounded\n";
    return 0;
  case LpStatus::Infeasible:
    out << "infeasible\n";
    return 0;
  }
  return 0;
}

int cmdCompare(const Options &o, std::ostream &out) {
  auto names = splitComma(o.bound);
  if (names.size() != 2)
    throw UsageError("--bound needs two comma-separated bounds for compare");
  Network net = loadNetwork(o.net);
  Region r1 = makeRegion(names[0], o, net), r2 = makeRegion(names[1], o, net);
  if (o.independent) {
    // Independent sources make both readings of a constant coincide.
    r1 = r1.reinterpret(RegionMode::Independent);
    r2 = r2.reinterpret(RegionMode::Independent);
  }
  if (r1.mode != r2.mode)
    throw DomainError("regions have different modes; pass --independent to compare them");
  Comparison c = compareRegions(r1, r2);
  out << containmentName(c.relation);
  if (c.witness)
    out << " " << sessionSetStr(c.witness);
  if (c.witness2)
    out << " " << sessionSetStr(c.witness2);
  out << "\n";
  return 0;
}

int cmdOracle(const Options &o, std::ostream &out) {
  Network net = loadNetwork(o.net);
  std::vector<int> dims(net.numSessions(), 1);
  if (!o.dims.empty()) {
    auto items = splitComma(o.dims);
    if (int(items.size()) != net.numSessions())
      throw UsageError("--dims needs one entry per session");
    for (size_t i = 0; i < items.size(); ++i) {
      try {
        dims[i] = std::stoi(items[i]);
      } catch (const std::exception &) {
        throw UsageError("malformed --dims entry '" + items[i] + "'");
      }
      if (dims[i] < 1)
        throw UsageError("--dims entries must be at least 1");
    }
  }
  if (!isSmallPrime(o.q))
    throw UsageError("--q must be a prime up to 251");
  auto code = randomCode(net, o.q, dims, o.attempts, o.seed, o.scale);
  if (!code)
    throw DomainError("no valid code found in " + std::to_string(o.attempts) + " attempts");
  out << dumpCode(*code);
  return 0;
}

} // namespace

int runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Outer bounds for multi-source network coding", "ncbound"};
  app.require_subcommand(1);
  Options o;
  auto addNet = [&](CLI::App *c) { c->add_option("--net", o.net, "network document")->required(); };

  auto *validate = app.add_subcommand("validate", "check a network document");
  addNet(validate);

  auto *fdgDump = app.add_subcommand("fdg-dump", "print a functional dependence graph as DOT");
  addNet(fdgDump);
  fdgDump->add_option("--construction", o.construction, "A or B");
  fdgDump->add_flag("--gbar", o.gbar, "drop arcs into source nodes");
  fdgDump->add_option("--table", o.table, "write the node id table here");

  auto *maxsets = app.add_subcommand("maxsets", "list maximal irreducible sets");
  addNet(maxsets);
  maxsets->add_option("--construction", o.construction, "A or B");
  maxsets->add_option("--kind", o.kind, "phiA, phiB or psi");
  maxsets->add_flag("--independent", o.independent, "default the kind to psi");
  maxsets->add_flag("--with-estimates", o.withEstimates, "keep sets containing estimates");

  auto *bound = app.add_subcommand("bound", "print an outer-bound region");
  addNet(bound);
  bound->add_option("--bound", o.bound, "fd, cutset, ns, pde, ipde or lp");
  bound->add_option("--kind", o.kind, "phiA, phiB or psi");
  bound->add_option("--W", o.w, "comma list of sessions or all");
  bound->add_flag("--independent", o.independent, "default the kind to psi");
  bound->add_flag("--improved", o.improved, "improved PdE");
  bound->add_option("--guard", o.guard, "search guard");

  auto *lp = app.add_subcommand("lp", "solve the weighted sum-rate LP");
  addNet(lp);
  lp->add_option("--weights", o.weights, "comma list, one per session");
  lp->add_option("--guard", o.guard, "ground-set guard");
  lp->add_flag("--dump", o.dump, "print the LP instead of solving it");

  auto *compare = app.add_subcommand("compare", "compare two regions");
  addNet(compare);
  compare->add_option("--bound", o.bound, "two bounds, e.g. fd,cutset")->required();
  compare->add_option("--kind", o.kind, "closure for fd");
  compare->add_flag("--independent", o.independent, "read both regions as sum-rate bounds");
  compare->add_flag("--improved", o.improved, "improved PdE");
  compare->add_option("--guard", o.guard, "search guard");

  auto *oracle = app.add_subcommand("oracle", "sample a random linear code");
  addNet(oracle);
  oracle->add_option("--q", o.q, "prime field size");
  oracle->add_option("--dims", o.dims, "message dimension per session");
  oracle->add_option("--seed", o.seed, "random seed");
  oracle->add_option("--attempts", o.attempts, "samples before giving up");
  oracle->add_option("--scale", o.scale, "blocklength factor");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*validate)
      return cmdValidate(o, out);
    if (*fdgDump)
      return cmdFdgDump(o, out);
    if (*maxsets)
      return cmdMaxsets(o, out);
    if (*bound)
      return cmdBound(o, out);
    if (*lp)
      return cmdLp(o, out);
    if (*compare)
      return cmdCompare(o, out);
    if (*oracle)
      return cmdOracle(o, out);
  } catch (const UsageError &e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace ncb
