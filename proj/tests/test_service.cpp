#include <doctest.h>

#include <httplib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "crossing/record.hpp"
#include "crossing/service.hpp"

using namespace crossing;
using nlohmann::json;

namespace {

std::string create_body(json extra) {
  json j{{"variant", "crossing"}, {"m", 3}, {"n", 2}, {"humanRole", "Breaker"}, {"engine", "lehman"}};
  j.update(extra);
  return j.dump();
}

// First unclaimed edge of a finite S board in the game view.
json free_edge(const json& view) {
  std::set<std::pair<int, int>> taken;
  for (auto& c : view["claims"]) taken.insert({c[0].get<int>(), c[1].get<int>()});
  Board b = make_board(view["board"]["m"], view["board"]["n"]);
  for (const EdgeId& e : edge_set(b))
    if (!taken.count({e.u, e.v})) return edge_json(e);
  return nullptr;
}

}  // namespace

TEST_CASE("service: create and inspect a game") {
  GameService svc;
  ServiceReply r = svc.create_game(create_body(json::object()));
  REQUIRE(r.status == 201);
  json v = r.body;
  CHECK(v["turn"] == "Breaker");
  CHECK(v["humanRole"] == "Breaker");
  CHECK(v["engine"]["kind"] == "lehman");
  CHECK(v["lastEngineMove"].size() == 1);
  CHECK(v["claims"].size() == 1);
  CHECK(v["claims"][0][2] == "Blue");
  CHECK(v["verdict"] == "Ongoing");
  CHECK(v["board"]["kind"] == "S");
  std::string id = v["id"];
  CHECK(id.size() == 16);

  ServiceReply g = svc.get_game(id);
  CHECK(g.status == 200);
  CHECK(g.body["claims"] == v["claims"]);
  CHECK(svc.get_game("0123456789abcdef").status == 404);
  CHECK(svc.overlay("0123456789abcdef").status == 404);
  CHECK(svc.submit_move("0123456789abcdef", R"({"edges":[[3,2]]})").status == 404);
}

TEST_CASE("service: request validation") {
  GameService svc;
  CHECK(svc.create_game("{not json").status == 400);
  CHECK(svc.create_game(R"({"m":3,"humanRole":"Breaker","engine":"random"})").status == 400);
  CHECK(svc.create_game(create_body({{"m", 1}})).status == 400);
  CHECK(svc.create_game(create_body({{"n", 0}})).status == 400);
  CHECK(svc.create_game(create_body({{"m", 500}})).status == 400);
  CHECK(svc.create_game(create_body({{"p", 0}})).status == 400);
  // p >= m-1 hands Maker the opening crossing.
  ServiceReply big = svc.create_game(create_body({{"p", 2}, {"engine", "random"}}));
  CHECK(big.status == 400);
  CHECK(big.body["error"] == "BadRequest");
  ServiceReply inc = svc.create_game(create_body({{"humanRole", "Maker"}}));
  CHECK(inc.status == 400);
  CHECK(inc.body["error"] == "AgentIncompatible");
  CHECK(svc.create_game(create_body({{"variant", "nonsense"}})).status == 400);
  CHECK(svc.create_game(create_body({{"humanRole", "Nobody"}})).status == 400);
}

TEST_CASE("service: moves, conflicts and game over") {
  auto path = std::filesystem::temp_directory_path() / "crossing_service_test.jsonl";
  std::filesystem::remove(path);
  GameService svc(path.string());
  json v = svc.create_game(create_body({{"seed", 4}})).body;
  std::string id = v["id"];

  json taken = json::array({v["lastEngineMove"][0]});
  ServiceReply dup = svc.submit_move(id, json{{"edges", taken}}.dump());
  CHECK(dup.status == 409);
  CHECK(dup.body["error"] == "EdgeAlreadyClaimed");
  CHECK(svc.submit_move(id, R"({"edges":[[3,2],[5,2]]})").status == 409);
  CHECK(svc.submit_move(id, R"({"edges":[[99,2]]})").status == 409);
  CHECK(svc.submit_move(id, R"({"edges":[[4,4]]})").status == 400);
  CHECK(svc.submit_move(id, R"({"wrong":1})").status == 400);
  CHECK(svc.submit_move(id, "nope").status == 400);

  int moves = 0;
  while (v["verdict"] == "Ongoing") {
    ServiceReply r = svc.submit_move(id, json{{"edges", json::array({free_edge(v)})}}.dump());
    REQUIRE(r.status == 200);
    v = r.body;
    ++moves;
  }
  CHECK(moves >= 1);
  CHECK(v["verdict"] == "MakerWin");
  CHECK(v["record"]["result"] == "MakerWin");
  ServiceReply over = svc.submit_move(id, R"({"edges":[[3,2]]})");
  CHECK(over.status == 410);
  CHECK(over.body["error"] == "GameOver");

  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    json rec = json::parse(line);
    CHECK(rec["session"] == id);
    CHECK(rec["engine"]["kind"] == "lehman");
    CHECK(to_string(replay_record(rec).verdict()) == "MakerWin");
    ++lines;
  }
  CHECK(lines == 1);
  std::filesystem::remove(path);
}

TEST_CASE("service: secure engine exposes its certificates") {
  GameService svc;
  json body{{"variant", "secure"}, {"n", 3}, {"p", 1}, {"q", 1}, {"humanRole", "Breaker"}, {"engine", "secure"}};
  ServiceReply r = svc.create_game(body.dump());
  REQUIRE(r.status == 201);
  CHECK(r.body["board"]["kind"] == "InfiniteStrip");
  CHECK(r.body["turn"] == "Breaker");
  CHECK(r.body["lastEngineMove"].empty());
  std::string id = r.body["id"];
  ServiceReply m = svc.submit_move(id, R"({"edges":[[21,2]]})");
  REQUIRE(m.status == 200);
  CHECK(m.body["lastEngineMove"].size() == 2);
  CHECK(m.body.contains("overlay"));
  ServiceReply o = svc.overlay(id);
  CHECK(o.status == 200);
  CHECK(o.body["engine"] == "secure");
  CHECK_FALSE(o.body["overlay"].is_null());
  ServiceReply two = svc.submit_move(id, R"({"edges":[[41,2],[43,2]]})");
  CHECK(two.status == 409);
  CHECK(two.body["error"] == "IllegalEdgeCount");
}

TEST_CASE("service: HTTP round trip") {
  GameService svc;
  httplib::Server srv;
  svc.mount(srv);
  int port = srv.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto created = cli.Post("/games", create_body(json::object()), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  json v = json::parse(created->body);
  std::string id = v["id"];

  auto got = cli.Get("/games/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(json::parse(got->body)["id"] == id);

  auto moved = cli.Post("/games/" + id + "/moves", json{{"edges", json::array({free_edge(v)})}}.dump(), "application/json");
  REQUIRE(moved);
  CHECK(moved->status == 200);

  auto ov = cli.Get("/games/" + id + "/overlay");
  REQUIRE(ov);
  CHECK(ov->status == 200);
  auto missing = cli.Get("/games/ffffffffffffffff");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto pre = cli.Options("/games");
  REQUIRE(pre);
  CHECK(pre->status == 204);

  srv.stop();
  t.join();
}
