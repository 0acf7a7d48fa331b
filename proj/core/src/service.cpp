#include "crossing/service.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <httplib.h>

#include "crossing/agents.hpp"
#include "crossing/errors.hpp"
#include "crossing/record.hpp"

namespace crossing {

struct GameService::Session {
  std::string id;
  GameState state;
  AgentSpec spec;
  std::unique_ptr<Agent> engine;
  Player human;
  std::vector<EdgeId> last_engine;
  bool persisted = false;
  mutable std::shared_mutex mu;

  Session(std::string id_, GameState s, AgentSpec sp, Player h)
      : id(std::move(id_)), state(std::move(s)), spec(std::move(sp)), human(h) {}

  // Engine plays until it is the human's turn or the game ends.
  void engine_moves() {
    last_engine.clear();
    while (state.verdict() == Verdict::Ongoing && state.turn() != human) {
      std::vector<EdgeId> edges = engine->choose(state);
      if (edges.empty()) break;
      Move m{state.turn(), edges, "engine"};
      state.apply(m);
      engine->observe(state, m);
      last_engine.insert(last_engine.end(), edges.begin(), edges.end());
    }
  }

  nlohmann::json view() const {
    const Board& b = state.board();
    nlohmann::json j{{"id", id},
                     {"variant", to_string(state.variant())},
                     {"board", {{"m", b.m}, {"n", b.n}, {"kind", to_string(b.kind)}}},
                     {"p", state.p()},
                     {"q", state.q()},
                     {"humanRole", to_string(human)},
                     {"engine", agent_spec_json(spec)},
                     {"turn", to_string(state.turn())},
                     {"owed", state.owed()},
                     {"verdict", to_string(state.verdict())},
                     {"claims", claims_json(state)},
                     {"record", game_record(state)},
                     {"lastEngineMove", edges_json(last_engine)}};
    if (spec.kind == "secure" || spec.kind == "strips") j["overlay"] = engine->overlay();
    return j;
  }
};

namespace {

ServiceReply error_reply(int status, const std::string& code, const std::string& detail) {
  return {status, {{"error", code}, {"detail", detail}}};
}

}  // namespace

GameService::GameService(std::string record_path) : record_path_(std::move(record_path)), id_rng_(std::random_device{}()) {}
GameService::~GameService() = default;

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void GameService::persist(const Session& s) {
  if (record_path_.empty()) return;
  std::lock_guard lock(record_mu_);
  std::ofstream out(record_path_, std::ios::app);
  nlohmann::json rec = game_record(s.state);
  rec["session"] = s.id;
  rec["engine"] = agent_spec_json(s.spec);
  out << rec.dump() << '\n';
}

ServiceReply GameService::create_game(const std::string& body) {
  nlohmann::json req;
  std::shared_ptr<Session> s;
  try {
    req = nlohmann::json::parse(body);
    Variant variant = variant_from_string(req.value("variant", std::string("crossing")));
    bool response = variant == Variant::DoubleResponse || variant == Variant::Secure;
    BoardKind kind = board_kind_from_string(req.value("kind", std::string(response ? "InfiniteStrip" : "S")));
    int m = req.value("m", 2), n = req.at("n").get<int>();
    int p = req.value("p", 1), q = req.value("q", 1);
    if (n < 1 || m < 2) return error_reply(400, "BadRequest", "board needs m >= 2 and n >= 1");
    if (m > 200 || n > 50) return error_reply(400, "BadRequest", "board too large for the service");
    if (p < 1 || q < 1) return error_reply(400, "BadRequest", "p and q must be positive");
    Board board = make_board(m, n, kind);
    if (board.finite()) {
      std::size_t edges = board.edge_count();
      if (std::size_t(p) > edges || std::size_t(q) > edges)
        return error_reply(400, "BadRequest", "quota exceeds the number of edges");
      if ((variant == Variant::Crossing || variant == Variant::Switching) && p >= m - 1)
        return error_reply(400, "BadRequest", "p >= m-1 lets Maker cross on the opening move");
    }
    Player human = player_from_string(req.at("humanRole").get<std::string>());
    AgentSpec spec = agent_spec_from_json(req.at("engine"), other(human));
    if (req.contains("seed")) spec.seed = req["seed"].get<std::uint64_t>();
    std::optional<Player> first;
    if (req.contains("first")) first = player_from_string(req["first"].get<std::string>());
    GameState state(board, p, q, variant, first);
    std::string id;
    {
      std::lock_guard lock(id_mu_);
      std::ostringstream os;
      os << std::hex << std::setw(16) << std::setfill('0') << id_rng_();
      id = os.str();
    }
    s = std::make_shared<Session>(id, state, spec, human);
    s->engine = make_agent(spec, s->state);
  } catch (const AgentIncompatible& ex) {
    return error_reply(400, "AgentIncompatible", ex.what());
  } catch (const std::exception& ex) {
    return error_reply(400, "BadRequest", ex.what());
  }
  try {
    s->engine_moves();
  } catch (const std::exception& ex) {
    return error_reply(500, "EngineFailure", ex.what());
  }
  {
    std::unique_lock lock(sessions_mu_);
    sessions_[s->id] = s;
  }
  return {201, s->view()};
}

ServiceReply GameService::get_game(const std::string& id) {
  auto s = find(id);
  if (!s) return error_reply(404, "UnknownSession", id);
  std::shared_lock lock(s->mu);
  return {200, s->view()};
}

ServiceReply GameService::submit_move(const std::string& id, const std::string& body) {
  auto s = find(id);
  if (!s) return error_reply(404, "UnknownSession", id);
  std::unique_lock lock(s->mu);
  if (s->state.verdict() != Verdict::Ongoing) return error_reply(410, "GameOver", to_string(s->state.verdict()));
  std::vector<EdgeId> edges;
  try {
    edges = edges_from_json(nlohmann::json::parse(body).at("edges"));
  } catch (const std::exception& ex) {
    return error_reply(400, "BadRequest", ex.what());
  }
  Move m{s->human, edges, "human"};
  try {
    s->state.apply(m);
  } catch (const GameError& ex) {
    nlohmann::json b{{"error", to_string(ex.code())}, {"detail", ex.what()}};
    if (ex.restriction()) b["restriction"] = std::string(1, ex.restriction());
    return {409, b};
  }
  try {
    s->engine->observe(s->state, m);
    s->engine_moves();
  } catch (const std::exception& ex) {
    return error_reply(500, "EngineFailure", ex.what());
  }
  if (s->state.verdict() != Verdict::Ongoing && !s->persisted) {
    s->persisted = true;
    persist(*s);
  }
  return {200, s->view()};
}

ServiceReply GameService::overlay(const std::string& id) {
  auto s = find(id);
  if (!s) return error_reply(404, "UnknownSession", id);
  std::shared_lock lock(s->mu);
  return {200, {{"id", id}, {"engine", s->spec.kind}, {"overlay", s->engine->overlay()}}};
}

void GameService::mount(httplib::Server& srv) {
  auto send = [](httplib::Response& res, const ServiceReply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Post("/games", [this, send](const httplib::Request& req, httplib::Response& res) { send(res, create_game(req.body)); });
  srv.Get(R"(/games/([0-9a-f]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_game(req.matches[1]));
  });
  srv.Post(R"(/games/([0-9a-f]+)/moves)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, submit_move(req.matches[1], req.body));
  });
  srv.Get(R"(/games/([0-9a-f]+)/overlay)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, overlay(req.matches[1]));
  });
}

int serve(const std::string& host, int port, const std::string& record_path) {
  GameService service(record_path);
  httplib::Server srv;
  service.mount(srv);
  if (!srv.listen(host, port)) return 1;
  return 0;
}

}  // namespace crossing
