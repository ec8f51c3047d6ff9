#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "clusterforge/errors.hpp"
#include "clusterforge/qp.hpp"
#include "clusterforge/quantum.hpp"
#include "clusterforge/seed.hpp"
#include "clusterforge/tropical.hpp"
#include "io.hpp"
#include "session.hpp"

namespace cfio {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  unsigned long rng_seed = 1;
  std::string input;
  std::string at;
  std::string against;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> trunc;
  std::size_t depth = 6;
  std::size_t samples = 20;
  std::size_t length = 6;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string state_file;
};

json read_input(const std::string& src) {
  if (src.empty()) throw UsageError("input: a quiver/QP JSON file, '-' or inline JSON is required");
  std::string text;
  auto first = src.find_first_not_of(" \t\r\n");
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (first != std::string::npos && src[first] == '{') {
    text = src;
  } else {
    std::ifstream in(src);
    if (!in) throw UsageError("input: cannot open " + src);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input is not JSON: ") + e.what());
  }
}

std::vector<std::size_t> sequence_of(const std::string& text, const char* flag, std::size_t n) {
  auto s = parse_sequence(text);
  if (!s) throw UsageError(std::string(flag) + ": expected 1-based vertices like 1,2,1, got \"" + text + "\"");
  for (auto k : *s)
    if (k >= n) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
  return *s;
}

// flag > value from the input > CLUSTER_FORGE_TRUNCATION > built-in default
std::size_t truncation(const Options& o, std::optional<std::size_t> from_input, std::size_t fallback) {
  if (o.trunc) return *o.trunc;
  if (from_input) return *from_input;
  if (const char* env = std::getenv("CLUSTER_FORGE_TRUNCATION")) {
    std::string v = env;
    if (v.empty() || v.size() > 6 || v.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("CLUSTER_FORGE_TRUNCATION: expected a non-negative integer, got \"" + v + "\"");
    return std::stoul(v);
  }
  return fallback;
}

void emit(std::ostream& out, const Options& o, const char* cmd, const json& result,
          const std::function<std::string()>& dot = {}, const std::function<std::string()>& tab = {}) {
  if (o.format == "json") {
    out << canonical(result) << '\n';
  } else if (o.format == "table") {
    out << (tab ? tab() : table(result));
  } else if (dot) {
    out << dot();
  } else {
    throw UsageError(std::string("--format: dot is not available for ") + cmd);
  }
}

// Nodes ordered by digest so that the output does not depend on BFS order.
std::string graph_dot(const char* name, const std::vector<std::string>& digests,
                      const std::vector<std::vector<long>>& adj, const std::function<std::string(std::size_t)>& label) {
  std::vector<std::size_t> order(digests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return digests[a] < digests[b]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < order.size(); ++i)
    os << "  v" << i << " [label=" << json(label(order[i])).dump() << "];\n";
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t k = 0; k < adj[v].size(); ++k) {
      long w = adj[v][k];
      if (w < 0) continue;
      auto a = rank[v], b = rank[w];
      if (a < b || (a == b && v == static_cast<std::size_t>(w))) edges.emplace_back(a, b, k + 1);
    }
  std::sort(edges.begin(), edges.end());
  for (auto [a, b, k] : edges) os << "  v" << a << " -- v" << b << " [label=\"" << k << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

using Handler = std::function<void(const Options&, std::ostream&, std::ostream&)>;

void cmd_mutate(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  q = q.mutate_sequence(sequence_of(o.at, "--at", q.n()));
  emit(out, o, "mutate", quiver_json(q), [&] { return quiver_dot(q); }, [&] { return matrix_table(q.matrix()); });
}

void cmd_class(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  MutationClass c = mutation_class(q, o.limit.value_or(kDefaultClassLimit));
  json r = {{"size", c.members.size()}, {"truncated", c.truncated}};
  emit(out, o, "class", r, [&] {
    std::vector<std::string> digests;
    for (const auto& m : c.members) digests.push_back(canonical_form(m).digest);
    return graph_dot("mutation_class", digests, c.adjacency, [&](std::size_t i) { return digests[i]; });
  });
}

void cmd_exchange_graph(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  ExchangeGraph g = exchange_graph(Seed::initial(q), o.limit.value_or(kDefaultExchangeLimit));
  json r = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"truncated", g.truncated}};
  emit(out, o, "exchange-graph", r, [&] {
    return graph_dot("exchange_graph", g.digests, g.adjacency, [&](std::size_t v) {
      if (v < g.seeds.size()) return join(g.seeds[v].cluster_strings(), ", ");
      std::string p;
      for (auto k : g.path_to(v)) p += (p.empty() ? "" : ",") + std::to_string(k + 1);
      return "mu(" + p + ")";
    });
  });
}

void cmd_variables(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  Seed s = Seed::initial(q);
  ClusterVariables cv = cluster_variables(s, o.limit.value_or(kDefaultExchangeLimit));
  json vars = json::array();
  for (const auto& v : cv.variables) vars.push_back(v.to_string(s.names()));
  emit(out, o, "variables", {{"count", cv.count}, {"truncated", cv.truncated}, {"variables", vars}});
}

void cmd_matrix(const Options& o, std::ostream& out, bool c) {
  Quiver q = quiver_from(read_input(o.input));
  auto s = sequence_of(o.at, "--at", q.n());
  IntMatrix m = c ? c_matrix(q, s) : g_matrix(q, s);
  emit(out, o, c ? "cmatrix" : "gmatrix", {{"sequence", sequence_json(s)}, {"matrix", matrix_json(m)}}, {},
       [&] { return matrix_table(m); });
}

void cmd_fpoly(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  auto s = sequence_of(o.at, "--at", q.n());
  json f = json::array();
  for (const auto& p : f_polynomials(q, s)) f.push_back(p.to_string(names("y", q.n())));
  emit(out, o, "fpoly", {{"sequence", sequence_json(s)}, {"f", f}});
}

void cmd_duality(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  std::vector<std::vector<std::size_t>> seqs;
  if (!o.at.empty()) {
    seqs.push_back(sequence_of(o.at, "--at", q.n()));
  } else {
    std::mt19937 rng(o.rng_seed);
    std::uniform_int_distribution<std::size_t> kd(0, q.n() - 1);
    for (std::size_t i = 0; i < o.samples && q.n() > 0; ++i) {
      std::vector<std::size_t> s;
      while (s.size() < o.length) {
        auto k = kd(rng);
        if (s.empty() || s.back() != k || q.n() == 1) s.push_back(k);
      }
      seqs.push_back(std::move(s));
    }
  }
  bool dual = q.frozen() == 0;
  json trop_fail = json::array(), lang_fail = json::array();
  for (const auto& s : seqs) {
    for (const auto& f : check_tropical_duality(q, s).failures) trop_fail.push_back(f);
    if (dual)
      for (const auto& f : check_langlands_duality(q, s).failures) lang_fail.push_back(f);
  }
  json r = {{"sequences", seqs.size()},
            {"tropical", trop_fail.empty()},
            {"langlands", dual ? json(lang_fail.empty()) : json(nullptr)},
            {"failures", trop_fail}};
  for (auto& f : lang_fail) r["failures"].push_back(f);
  emit(out, o, "duality", r);
}

CompatiblePair compatible_pair_of(const json& in, const Quiver& q) {
  if (in.contains("lambda")) return CompatiblePair::make(q.matrix(), matrix_from(in["lambda"]));
  if (q.frozen() != 0) throw IncompatibleInput("ice quiver input needs an explicit \"lambda\"");
  return CompatiblePair::principal_framing(q.matrix());
}

void cmd_quantum_mutate(const Options& o, std::ostream& out, std::ostream&) {
  json in = read_input(o.input);
  Quiver q = quiver_from(in);
  auto s = sequence_of(o.at, "--at", q.n());
  QuantumSeed qs = QuantumSeed::make_initial(compatible_pair_of(in, q)).at(s);
  auto xs = names("x", qs.current.m());
  json cl = json::array(), classical = json::array();
  for (const auto& x : qs.x) {
    cl.push_back(x.to_string());
    classical.push_back(x.specialize().to_string(xs));
  }
  emit(out, o, "quantum-mutate",
       {{"sequence", sequence_json(s)},
        {"cluster", cl},
        {"classical", classical},
        {"matrix", matrix_json(qs.current.btilde)},
        {"lambda", matrix_json(qs.current.lambda)}});
}

void cmd_pentagon(const Options& o, std::ostream& out, std::ostream&) {
  std::size_t n = truncation(o, std::nullopt, 10);
  IntMatrix b{{0, 1}, {-1, 0}};
  auto lhs = qdilog(b, {1, 0}, n) * qdilog(b, {0, 1}, n);
  auto rhs = qdilog(b, {0, 1}, n) * qdilog(b, {1, 1}, n) * qdilog(b, {1, 0}, n);
  emit(out, o, "pentagon", {{"holds", lhs == rhs}});
}

void cmd_dt(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  std::size_t n = truncation(o, std::nullopt, 10);
  auto dt = combinatorial_dt(q.principal(), n, o.depth);
  json r = {{"found", dt.has_value()}};
  if (dt) {
    r["sequence"] = sequence_json(dt->sequence);
    r["series"] = series_json(dt->series);
  }
  emit(out, o, "dt", r);
}

void cmd_identity(const Options& o, std::ostream& out, std::ostream&) {
  Quiver q = quiver_from(read_input(o.input));
  auto a = sequence_of(o.at, "--at", q.n());
  auto b = sequence_of(o.against, "--against", q.n());
  auto rep = verify_identity(q.principal(), a, b, truncation(o, std::nullopt, 10));
  emit(out, o, "identity", {{"equal", rep.equal}, {"permutation", matrix_json(rep.permutation)}});
}

std::optional<std::size_t> input_truncation(const json& in) {
  if (in.is_object() && in.contains("truncation") && in["truncation"].is_number_unsigned())
    return in["truncation"].get<std::size_t>();
  return std::nullopt;
}

void cmd_qp_mutate(const Options& o, std::ostream& out, std::ostream&) {
  json in = read_input(o.input);
  QuiverWithPotential qp = qp_from(in);
  std::size_t n = truncation(o, input_truncation(in), 12);
  qp.set_truncation(n);
  for (auto k : sequence_of(o.at, "--at", qp.vertices())) qp = mutate_qp(qp, k, n);
  emit(out, o, "qp-mutate", qp_json(qp), {}, [&] {
    std::string t;
    for (const auto& a : qp.arrows())
      t += a.name + "\t" + std::to_string(a.source + 1) + " -> " + std::to_string(a.target + 1) + "\n";
    return t + "W\t" + qp.potential_string() + "\n";
  });
}

void cmd_jacobian(const Options& o, std::ostream& out, std::ostream&) {
  json in = read_input(o.input);
  QuiverWithPotential qp = qp_from(in);
  std::size_t n = truncation(o, input_truncation(in), 12);
  auto d = jacobian_dimension(qp, n);
  emit(out, o, "jacobian", {{"N", n}, {"dimension", d.dimension}, {"saturated", d.saturated}});
}

void cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.format != "json") throw UsageError("--format: serve always speaks JSON");
  std::unique_ptr<Session> session;
  if (!o.state_file.empty() && std::ifstream(o.state_file)) {
    session = Session::load(o.state_file);
  } else {
    if (o.input.empty()) throw UsageError("input: serve needs a quiver (or an existing --state-file)");
    session = std::make_unique<Session>(quiver_from(read_input(o.input)), o.state_file);
  }
  auto svr = make_server(*session);
  int port = o.port == 0 ? svr->bind_to_any_port(o.host) : (svr->bind_to_port(o.host, o.port) ? o.port : -1);
  if (port < 0) throw UsageError("--port: cannot bind " + o.host + ":" + std::to_string(o.port));
  out << canonical({{"listening", o.host + ":" + std::to_string(port)}}) << std::endl;
  err << "serving on http://" << o.host << ":" << port << std::endl;
  svr->listen_after_bind();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"exact cluster algebra computations", "cluster-forge"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot", "table"}));
  app.add_option("--rng-seed", o.rng_seed, "seed for randomized checks");

  std::map<CLI::App*, Handler> handlers;
  auto sub = [&](const char* name, const char* help, Handler h, bool input = true) {
    CLI::App* s = app.add_subcommand(name, help);
    if (input) s->add_option("input", o.input, "JSON file, '-' for stdin, or inline JSON");
    handlers[s] = std::move(h);
    return s;
  };
  auto at = [&](CLI::App* s, bool required = false) {
    auto* opt = s->add_option("--at", o.at, "mutation sequence, 1-based, e.g. 1,2,1");
    if (required) opt->required();
  };
  auto trunc = [&](CLI::App* s) { s->add_option("--N", o.trunc, "truncation order"); };
  auto limit = [&](CLI::App* s) { s->add_option("--limit", o.limit, "exploration limit"); };

  at(sub("mutate", "mutate a quiver along a sequence", cmd_mutate));
  limit(sub("class", "size of the mutation class", cmd_class));
  limit(sub("exchange-graph", "exchange graph of the coefficient-free seed", cmd_exchange_graph));
  limit(sub("variables", "all cluster variables", cmd_variables));
  at(sub("cmatrix", "C-matrix at the end of a sequence",
         [](const Options& o, std::ostream& out, std::ostream&) { cmd_matrix(o, out, true); }));
  at(sub("gmatrix", "G-matrix at the end of a sequence",
         [](const Options& o, std::ostream& out, std::ostream&) { cmd_matrix(o, out, false); }));
  at(sub("fpoly", "F-polynomials at the end of a sequence", cmd_fpoly));
  {
    auto* s = sub("duality", "tropical and Langlands duality checks", cmd_duality);
    at(s);
    s->add_option("--samples", o.samples, "random sequences when --at is absent");
    s->add_option("--length", o.length, "length of each random sequence");
  }
  at(sub("quantum-mutate", "quantum seed along a sequence", cmd_quantum_mutate));
  trunc(sub("pentagon", "pentagon identity for the quantum dilogarithm", cmd_pentagon, false));
  {
    auto* s = sub("dt", "combinatorial DT invariant via a maximal green sequence", cmd_dt);
    trunc(s);
    s->add_option("--depth", o.depth, "longest sequence searched");
  }
  {
    auto* s = sub("identity", "compare dilogarithm products of two sequences", cmd_identity);
    at(s, true);
    s->add_option("--against", o.against, "second sequence")->required();
    trunc(s);
  }
  {
    auto* s = sub("qp-mutate", "mutate a quiver with potential", cmd_qp_mutate);
    at(s, true);
    trunc(s);
  }
  trunc(sub("jacobian", "truncated Jacobian algebra dimension", cmd_jacobian));
  {
    auto* s = sub("serve", "JSON API over HTTP", cmd_serve);
    s->add_option("--host", o.host, "bind address");
    s->add_option("--port", o.port, "port, 0 picks a free one");
    s->add_option("--state-file", o.state_file, "JSON snapshot, restored on start");
  }

  std::vector<std::string> argv_s{"cluster-forge"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_s) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [s, h] : handlers)
      if (s->parsed()) h(o, out, err);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: InternalError: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cfio
