#include "session.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "clusterforge/errors.hpp"
#include "clusterforge/tropical.hpp"

namespace cfio {

Session::Session(const Quiver& q, std::string state_file) : state_file_(std::move(state_file)) {
  restart_locked(q);
  persist_locked();
}

void Session::restart_locked(const Quiver& q) {
  initial_ = q;
  nodes_.clear();
  nodes_.push_back({-1, -1, Seed::initial(q)});
  cursor_ = 0;
}

std::unique_ptr<Session> Session::load(const std::string& state_file) {
  std::ifstream in(state_file);
  if (!in) throw ParseError("cannot read state file " + state_file);
  json snap = json::parse(in);
  auto s = std::make_unique<Session>(quiver_from(snap.at("initial")));
  std::lock_guard lock(s->mu_);
  const json& hist = snap.at("history");
  for (std::size_t i = 1; i < hist.size(); ++i) {
    long parent = hist[i].at("parent").get<long>();
    long vertex = hist[i].at("vertex").get<long>() - 1;
    if (parent < 0 || static_cast<std::size_t>(parent) >= i || vertex < 0 ||
        static_cast<std::size_t>(vertex) >= s->initial_.n())
      throw ParseError("corrupt history in " + state_file);
    s->nodes_.push_back({parent, vertex, s->nodes_[parent].seed.mutate(vertex)});
  }
  std::size_t cursor = snap.at("cursor").get<std::size_t>();
  if (cursor >= s->nodes_.size()) throw ParseError("corrupt cursor in " + state_file);
  s->cursor_ = cursor;
  s->version_ = snap.value("version", 0L);
  s->state_file_ = state_file;
  return s;
}

std::vector<std::size_t> Session::path_locked(std::size_t node) const {
  std::vector<std::size_t> path;
  for (long v = static_cast<long>(node); nodes_[v].parent >= 0; v = nodes_[v].parent) path.push_back(nodes_[v].vertex);
  return {path.rbegin(), path.rend()};
}

json Session::view_locked() const {
  const Seed& s = nodes_[cursor_].seed;
  auto path = path_locked(cursor_);
  json hist = json::array();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    hist.push_back({{"id", i},
                    {"parent", nd.parent < 0 ? json(nullptr) : json(nd.parent)},
                    {"vertex", nd.vertex < 0 ? json(nullptr) : json(nd.vertex + 1)}});
  }
  json f = json::array();
  for (const auto& p : f_polynomials(initial_, path)) f.push_back(p.to_string(names("y", initial_.n())));
  return {{"version", version_},
          {"quiver", quiver_json(s.quiver())},
          {"cluster", s.cluster_strings()},
          {"path", sequence_json(path)},
          {"c_matrix", matrix_json(c_matrix(initial_, path))},
          {"g_matrix", matrix_json(g_matrix(initial_, path))},
          {"f_polynomials", f},
          {"history", {{"nodes", hist}, {"cursor", cursor_}}}};
}

json Session::view() const {
  std::lock_guard lock(mu_);
  return view_locked();
}

json Session::mutate(const json& vertex, std::optional<long> version) {
  std::lock_guard lock(mu_);
  if (version && *version != version_)
    throw SessionError(409, "Conflict",
                       "session moved to version " + std::to_string(version_) + ", request was based on " +
                           std::to_string(*version));
  std::size_t n = initial_.n();
  if (!vertex.is_number_integer() || vertex.get<long>() < 1 || vertex.get<long>() > static_cast<long>(n)) {
    std::string shown = vertex.dump();
    bool frozen = vertex.is_number_integer() && vertex.get<long>() > static_cast<long>(n) &&
                  vertex.get<long>() <= static_cast<long>(initial_.m());
    throw SessionError(400, "VertexOutOfRange",
                       frozen ? "vertex " + shown + " is frozen" : "vertex " + shown + " outside 1.." + std::to_string(n));
  }
  long k = vertex.get<long>() - 1;
  std::size_t next = nodes_.size();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].parent == static_cast<long>(cursor_) && nodes_[i].vertex == k) next = i;
  if (next == nodes_.size()) nodes_.push_back({static_cast<long>(cursor_), k, nodes_[cursor_].seed.mutate(k)});
  cursor_ = next;
  ++version_;
  persist_locked();
  return view_locked();
}

json Session::undo() {
  std::lock_guard lock(mu_);
  if (nodes_[cursor_].parent < 0) throw SessionError(400, "NothingToUndo", "already at the initial seed");
  cursor_ = nodes_[cursor_].parent;
  ++version_;
  persist_locked();
  return view_locked();
}

json Session::reset(const std::optional<Quiver>& q) {
  std::lock_guard lock(mu_);
  restart_locked(q ? *q : initial_);
  ++version_;
  persist_locked();
  return view_locked();
}

json Session::neighborhood(std::size_t depth) const {
  Seed start;
  {
    std::lock_guard lock(mu_);
    start = nodes_[cursor_].seed;
  }
  ExchangeGraph g = exchange_neighborhood(start, depth);
  json verts = json::array(), edges = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    verts.push_back({{"id", v}, {"cluster", g.seeds[v].cluster_strings()}, {"path", sequence_json(g.path_to(v))}});
    for (std::size_t k = 0; k < g.adjacency[v].size(); ++k) {
      long w = g.adjacency[v][k];
      if (w > static_cast<long>(v)) edges.push_back({{"source", v}, {"target", w}, {"vertex", k + 1}});
    }
  }
  return {{"depth", depth},
          {"vertex_count", g.vertex_count()},
          {"edge_count", g.edge_count()},
          {"vertices", verts},
          {"edges", edges}};
}

json Session::snapshot_locked() const {
  json hist = json::array();
  for (const auto& nd : nodes_) hist.push_back({{"parent", nd.parent}, {"vertex", nd.vertex + 1}});
  return {{"initial", quiver_json(initial_)}, {"history", hist}, {"cursor", cursor_}, {"version", version_}};
}

json Session::snapshot() const {
  std::lock_guard lock(mu_);
  return snapshot_locked();
}

void Session::persist_locked() const {
  if (state_file_.empty()) return;
  json snap = snapshot_locked();
  std::string tmp = state_file_ + ".tmp";
  {
    std::ofstream out(tmp);
    out << snap.dump(2) << '\n';
    if (!out) throw SessionError(500, "StateFileError", "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), state_file_.c_str()) != 0)
    throw SessionError(500, "StateFileError", "cannot replace " + state_file_);
}

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, 200, f(req));
    } catch (const SessionError& e) {
      reply(res, e.status, {{"error", e.name}, {"message", e.what()}});
    } catch (const Error& e) {
      reply(res, 400, {{"error", e.name()}, {"message", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", "ParseError"}, {"message", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", "InternalError"}, {"message", e.what()}});
    }
  };
}

json body_of(const httplib::Request& req) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json j = json::parse(req.body);
  if (!j.is_object()) throw SessionError(400, "ParseError", "request body must be a JSON object");
  return j;
}

}  // namespace

std::unique_ptr<httplib::Server> make_server(Session& s) {
  auto svr = std::make_unique<httplib::Server>();
  svr->Get("/session", guarded([&s](const httplib::Request&) { return s.view(); }));
  svr->Post("/mutate", guarded([&s](const httplib::Request& req) {
    json b = body_of(req);
    if (!b.contains("vertex")) throw SessionError(400, "InvalidArgument", "body needs \"vertex\"");
    std::optional<long> version;
    if (b.contains("version")) {
      if (!b["version"].is_number_integer()) throw SessionError(400, "InvalidArgument", "\"version\" must be an integer");
      version = b["version"].get<long>();
    }
    return s.mutate(b["vertex"], version);
  }));
  svr->Post("/undo", guarded([&s](const httplib::Request&) { return s.undo(); }));
  svr->Post("/reset", guarded([&s](const httplib::Request& req) {
    json b = body_of(req);
    if (b.empty()) return s.reset();
    return s.reset(quiver_from(b.contains("quiver") ? b["quiver"] : b));
  }));
  svr->Get("/neighborhood", guarded([&s](const httplib::Request& req) {
    std::size_t depth = 1;
    if (req.has_param("depth")) {
      auto text = req.get_param_value("depth");
      if (text.empty() || text.size() > 2 || text.find_first_not_of("0123456789") != std::string::npos ||
          std::stoul(text) > 12)
        throw SessionError(400, "InvalidArgument", "depth must be an integer in 0..12");
      depth = std::stoul(text);
    }
    return s.neighborhood(depth);
  }));
  svr->Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  return svr;
}

}  // namespace cfio
