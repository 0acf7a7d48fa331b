#include "crossing/record.hpp"

#include "crossing/errors.hpp"

namespace crossing {

json edge_json(const EdgeId& e) { return json::array({e.u, e.v}); }

EdgeId edge_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("edge must be [u,v]");
  return make_edge(j[0].get<int>(), j[1].get<int>());
}

json edges_json(const std::vector<EdgeId>& edges) {
  json out = json::array();
  for (const EdgeId& e : edges) out.push_back(edge_json(e));
  return out;
}

std::vector<EdgeId> edges_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("edge list must be an array");
  std::vector<EdgeId> out;
  for (const json& e : j) out.push_back(edge_from_json(e));
  return out;
}

json game_record(const GameState& state) {
  json moves = json::array();
  for (const Move& m : state.history()) moves.push_back({{"player", to_string(m.player)}, {"edges", edges_json(m.edges)}});
  json rec = {{"variant", to_string(state.variant())},
          {"m", state.board().m},
          {"n", state.board().n},
          {"kind", to_string(state.board().kind)},
          {"p", state.p()},
          {"q", state.q()},
          {"moves", moves},
          {"result", to_string(state.verdict())}};
  GameState fresh(state.board(), state.p(), state.q(), state.variant());
  if (fresh.turn() != state.first_player()) rec["first"] = to_string(state.first_player());
  return rec;
}

GameState replay_record(const json& record) {
  Board board = make_board(record.at("m").get<int>(), record.at("n").get<int>(),
                           board_kind_from_string(record.at("kind").get<std::string>()));
  std::optional<Player> first;
  if (record.contains("first")) first = player_from_string(record["first"].get<std::string>());
  GameState s(board, record.at("p").get<int>(), record.at("q").get<int>(),
              variant_from_string(record.at("variant").get<std::string>()), first);
  for (const json& m : record.at("moves"))
    s.apply(Move{player_from_string(m.at("player").get<std::string>()), edges_from_json(m.at("edges")), ""});
  if (record.contains("result") && to_string(s.verdict()) != record["result"].get<std::string>())
    throw ContractViolation("replay verdict " + to_string(s.verdict()) + " differs from recorded " +
                            record["result"].get<std::string>());
  return s;
}

json claims_json(const GameState& state) {
  std::vector<std::pair<EdgeId, Claim>> all(state.claims().begin(), state.claims().end());
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.first < b.first; });
  json out = json::array();
  for (auto& [e, c] : all) out.push_back({e.u, e.v, to_string(c)});
  return out;
}

}  // namespace crossing
