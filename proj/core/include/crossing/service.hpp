#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>

#include <json.hpp>

namespace httplib {
class Server;
}

namespace crossing {

struct ServiceReply {
  int status = 200;
  nlohmann::json body;
};

// In-memory game sessions: a human plays one side, an engine agent the
// other. Each method is a whole REST call; mount() wires them to routes.
//   POST /games             {variant,m,n,p,q,humanRole,engine[,kind,seed,first]}
//   GET  /games/{id}
//   POST /games/{id}/moves  {edges:[[u,v],...]}
//   GET  /games/{id}/overlay
class GameService {
 public:
  // Finished games are appended to record_path as JSON lines when set.
  explicit GameService(std::string record_path = "");
  ~GameService();

  ServiceReply create_game(const std::string& body);
  ServiceReply get_game(const std::string& id);
  ServiceReply submit_move(const std::string& id, const std::string& body);
  ServiceReply overlay(const std::string& id);

  void mount(httplib::Server& srv);

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  void persist(const Session& s);

  std::string record_path_;
  std::mutex record_mu_;
  std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mu_;
  std::mt19937_64 id_rng_;
};

// Runs the service until the process is stopped.
int serve(const std::string& host, int port, const std::string& record_path);

}  // namespace crossing
