// State behind `cluster-forge serve`: one seed, its mutation history tree and
// an undo cursor.  All public methods lock; views are copies.
#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterforge/seed.hpp"
#include "io.hpp"

namespace httplib {
class Server;
}

namespace cfio {

// Carries the HTTP status for the server layer.
struct SessionError : std::runtime_error {
  int status;
  std::string name;
  SessionError(int s, std::string n, const std::string& what) : std::runtime_error(what), status(s), name(std::move(n)) {}
};

class Session {
 public:
  explicit Session(const Quiver& q, std::string state_file = {});
  // Restores from a snapshot written by an earlier run.
  static std::unique_ptr<Session> load(const std::string& state_file);

  json view() const;
  // vertex is 1-based; a stale `version` means someone else mutated first.
  json mutate(const json& vertex, std::optional<long> version = std::nullopt);
  json undo();
  json reset(const std::optional<Quiver>& q = std::nullopt);
  json neighborhood(std::size_t depth) const;
  json snapshot() const;

 private:
  struct Node {
    long parent;  // -1 at the root
    long vertex;  // 0-based, -1 at the root
    Seed seed;
  };

  json view_locked() const;
  json snapshot_locked() const;
  std::vector<std::size_t> path_locked(std::size_t node) const;
  void persist_locked() const;
  void restart_locked(const Quiver& q);

  mutable std::mutex mu_;
  Quiver initial_;
  std::vector<Node> nodes_;
  std::size_t cursor_ = 0;
  long version_ = 0;
  std::string state_file_;
};

// Routes: GET /session, POST /mutate, POST /undo, POST /reset, GET /neighborhood.
std::unique_ptr<httplib::Server> make_server(Session& s);

}  // namespace cfio
