// Command-line front end: match runner, solver, Erdős–Selfridge evaluator,
// record replay and the play service.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "crossing/errors.hpp"
#include "crossing/harness.hpp"
#include "crossing/record.hpp"
#include "crossing/service.hpp"
#include "crossing/solver.hpp"

using namespace crossing;

namespace {

struct BoardArgs {
  int m = 6;
  int n = 5;
  int p = 1;
  int q = 1;
  std::string kind;

  void add(CLI::App* app) {
    app->add_option("--m", m, "board length");
    app->add_option("--n", n, "board height");
    app->add_option("--p", p, "Maker edges per turn");
    app->add_option("--q", q, "Breaker edges per turn");
    app->add_option("--kind", kind, "S, Lambda or InfiniteStrip");
  }
  Board board(BoardKind fallback) const { return make_board(m, n, kind.empty() ? fallback : board_kind_from_string(kind)); }
};

int run_match_cmd(const MatchConfig& cfg, const std::string& out_path) {
  std::ofstream file;
  std::ostream* out = nullptr;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    out = &file;
  }
  MatchReport rep = run_match(cfg, out);
  std::cout << rep.summary_json().dump() << '\n';
  return rep.violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker crossing games on grid boards"};
  app.require_subcommand(1);

  // match
  auto* match = app.add_subcommand("match", "play agents against each other");
  BoardArgs mb;
  mb.add(match);
  std::string variant = "crossing", maker = "random", breaker = "random", out_path, first;
  std::string maker_params = "{}", breaker_params = "{}";
  MatchConfig cfg;
  match->add_option("--variant", variant, "crossing, switching, double-response or secure");
  match->add_option("--maker", maker, "Maker agent kind");
  match->add_option("--breaker", breaker, "Breaker agent kind");
  match->add_option("--maker-params", maker_params, "Maker agent params as JSON");
  match->add_option("--breaker-params", breaker_params, "Breaker agent params as JSON");
  match->add_option("--games", cfg.games, "number of games");
  match->add_option("--seed", cfg.seed, "match seed");
  match->add_option("--turn-cap", cfg.turn_cap, "move cap on the infinite strip");
  match->add_option("--first", first, "Maker or Breaker");
  match->add_option("--out", out_path, "JSON-lines record file");
  match->add_flag("--trace", cfg.trace, "embed per-turn ledger/certificate snapshots in records");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "exact winner by game-tree search");
  BoardArgs sb;
  sb.add(solve_cmd);
  std::string solve_first = "Maker";
  SolverOptions sopt;
  solve_cmd->add_option("--first", solve_first, "Maker or Breaker");
  solve_cmd->add_option("--edge-limit", sopt.edge_limit, "largest board accepted");
  solve_cmd->add_option("--table-bits", sopt.table_bits, "log2 of the transposition table size");
  solve_cmd->add_option("--node-limit", sopt.node_limit, "give up after this many nodes (0 = never)");

  // es
  auto* es = app.add_subcommand("es", "Erdős–Selfridge criterion and path-length histogram");
  BoardArgs eb;
  eb.add(es);
  std::uint64_t path_limit = 20'000'000;
  es->add_option("--path-limit", path_limit, "give up beyond this many crossing paths");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "replay JSON-lines records and check their results");
  std::string replay_in;
  replay_cmd->add_option("--in", replay_in, "record file")->required();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "HTTP play service");
  int port = 8080;
  std::string host = "0.0.0.0", record_path;
  serve_cmd->add_option("--port", port, "listen port");
  serve_cmd->add_option("--host", host, "listen address");
  serve_cmd->add_option("--record", record_path, "append finished games to this JSON-lines file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*match) {
      cfg.variant = variant_from_string(variant);
      bool response = cfg.variant == Variant::DoubleResponse || cfg.variant == Variant::Secure;
      cfg.board = mb.board(response ? BoardKind::InfiniteStrip : BoardKind::S);
      cfg.p = mb.p;
      cfg.q = mb.q;
      cfg.maker = AgentSpec{Player::Maker, maker, 0, nlohmann::json::parse(maker_params)};
      cfg.breaker = AgentSpec{Player::Breaker, breaker, 0, nlohmann::json::parse(breaker_params)};
      if (!first.empty()) cfg.first = player_from_string(first);
      return run_match_cmd(cfg, out_path);
    }
    if (*solve_cmd) {
      SolveResult r = solve(sb.board(BoardKind::S), sb.p, sb.q, player_from_string(solve_first), sopt);
      std::cout << solve_json(r).dump() << '\n';
      return 0;
    }
    if (*es) {
      Board b = eb.board(BoardKind::S);
      EsResult r = erdos_selfridge(b, eb.p, eb.q, path_limit);
      nlohmann::json j = es_json(r);
      j["histogram"] = histogram_json(path_histogram(enumerate_crossing_paths(b, path_limit)));
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*replay_cmd) {
      std::ifstream in(replay_in);
      if (!in) throw std::runtime_error("cannot open " + replay_in);
      std::string line;
      long count = 0;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
          replay_record(nlohmann::json::parse(line));
        } catch (const GameError& ex) {
          throw ContractViolation("record " + std::to_string(count) + " does not replay: " + ex.what());
        }
        ++count;
      }
      std::cout << nlohmann::json{{"replayed", count}}.dump() << '\n';
      return 0;
    }
    if (*serve_cmd) {
      std::cerr << "listening on " << host << ":" << port << '\n';
      return serve(host, port, record_path);
    }
  } catch (const ContractViolation& ex) {
    std::cerr << "contract violation: " << ex.what() << '\n';
    return 2;
  } catch (const LimitExceeded& ex) {
    std::cerr << "limit exceeded: " << ex.what() << '\n';
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
