#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "autgrp/cli.hpp"
#include "autgrp/errors.hpp"
#include "autgrp/io.hpp"
#include "autgrp/platforms.hpp"

using namespace autgrp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  INFO(r.err);
  REQUIRE(r.status == 0);
  return parse_json(r.out);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "autgrp_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("automaton json round trip") {
  const auto g = grigorchuk_automaton();
  const Json j = automaton_to_json(g);
  CHECK(j["transitions"]["b"]["0"] == Json({"a", "0"}));
  const auto back = automaton_from_json(j);
  CHECK(back.state_names() == g.state_names());
  for (StateId s = 0; s < g.num_states(); ++s) {
    for (Letter x = 0; x < 2; ++x) CHECK(*back.transition(s, x) == *g.transition(s, x));
  }
  // States named only in transitions are added.
  const auto small = automaton_from_json(parse_json(
      R"({"alphabet":["0","1"],"states":["a"],"transitions":{"a":{"0":["e","1"],"1":["e","0"]},"e":{"0":["e","0"],"1":["e","1"]}}})"));
  CHECK(small.num_states() == 2);
  CHECK(small.valid());
  CHECK_THROWS_AS(automaton_from_json(parse_json(R"({"alphabet":["0","1"]})")), Error);
  CHECK_THROWS_AS(parse_json("{nope"), Error);
  const auto spec = affine_spec_from_json(parse_json(R"({"n":2,"d":1,"M":[[3]]})"));
  CHECK(spec.M == std::vector<std::vector<std::int64_t>>{{3}});
  CHECK(affine_spec_to_json(spec).dump() == R"({"n":2,"d":1,"M":[[3]]})");
}

TEST_CASE("wp-check, act and validate") {
  const Json r = run_json({"wp-check", "--preset", "grigorchuk", "--word", "b c d"});
  CHECK(r["result"] == true);
  CHECK(r["explored_states"].get<int>() >= 1);
  CHECK(run_json({"wp-check", "--word", "a b"})["result"] == false);
  CHECK(run_json({"wp-check", "--word", "b c", "--equal", "d^-1"})["result"] == true);

  const Json a = run_json({"act", "--word", "a b", "--input", "01", "--restrict"});
  CHECK(a["output"] == "11");

  CHECK(run_json({"validate", "--preset", "basilica3"})["valid"] == true);
  const auto bad = scratch("bad.json");
  write_json_file(bad.string(), parse_json(
      R"({"alphabet":["0","1"],"states":["s"],"transitions":{"s":{"0":["s","1"],"1":["s","1"]}}})"));
  const Run v = run({"validate", "--automaton", bad.string()});
  CHECK(v.status == 1);
  CHECK(parse_json(v.out)["not_permutation"] == Json({"s"}));
  const Run inv = run({"invert", "--automaton", bad.string()});
  CHECK(inv.status != 0);
  CHECK(parse_json(inv.err)["error"] == "NotInvertible");
}

TEST_CASE("errors are json") {
  const Run r = run({"wp-check", "--word", "z"});
  CHECK(r.status != 0);
  CHECK(parse_json(r.err)["error"] == "ParseError");
  const Run b = run({"--budget-states", "2", "wp-check", "--word", "a d a d a d a d"});
  CHECK(b.status != 0);
  CHECK(parse_json(b.err)["error"] == "BudgetExceeded");
  const Run u = run({"frobnicate"});
  CHECK(u.status != 0);
  CHECK(parse_json(u.err)["error"] == "ParseError");
  const Run h = run({"--help"});
  CHECK(h.status == 0);
  CHECK(h.out.find("experiment") != std::string::npos);
}

TEST_CASE("platform export of the odometer") {
  const Json j = run_json(
      {"platform", "export", "--preset", "affine", "--affine", R"({"n":2,"d":1,"M":[[1]]})", "--state-cap", "8"});
  const auto m = automaton_from_json(j);
  MealyAutomaton odo(Alphabet::digits(2), {"a1", "t", "e"},
                     {Transition{2, 1}, Transition{0, 0}, Transition{1, 0}, Transition{1, 1},
                      Transition{2, 0}, Transition{2, 1}});
  CHECK(automaton_to_json(m) == automaton_to_json(odo));
  const Run capped = run({"platform", "export", "--preset", "affine", "--state-cap", "2"});
  CHECK(capped.status != 0);
}

TEST_CASE("keygen, exchange, encrypt, decrypt") {
  const auto pub = scratch("pub.json"), priv = scratch("priv.json"), hs = scratch("hs.json");
  run_json({"--seed", "3", "keygen", "--preset", "grigorchuk", "--public-out", pub.string(),
            "--private-out", priv.string(), "--handshake-out", hs.string()});
  CHECK(read_json_file(pub.string()).contains("base_tuple"));
  CHECK(read_json_file(priv.string()).contains("A"));
  CHECK(read_json_file(hs.string())["c_tuple"].size() == 4);

  const auto dir = scratch("session");
  const Json report = run_json({"--seed", "3", "exchange", "--public", pub.string(), "--private",
                                priv.string(), "--handshake", hs.string(), "--out-dir", dir.string(),
                                "--payload-bytes", "64"});
  CHECK(report["round_trip"] == true);
  CHECK(report["verification"]["holds"] == true);
  CHECK(report["verification"]["mode"] == "exact");

  // 1 KiB file through Bob's key, back through Alice's.
  const auto plain = scratch("plain.bin"), ct = scratch("ct.json"), back = scratch("back.bin");
  std::vector<std::uint8_t> bytes(1024);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(i * 37 + 11);
  write_bytes(plain.string(), bytes);
  const std::string pub_path = (dir / "public.json").string();
  CHECK(run({"encrypt", "--public", pub_path, "--session", (dir / "session_bob.json").string(),
             "--in", plain.string(), "--out", ct.string()}).status == 0);
  CHECK(read_json_file(ct.string())["header"] == 1024);
  CHECK(run({"decrypt", "--public", pub_path, "--session", (dir / "session_alice.json").string(),
             "--in", ct.string(), "--out", back.string()}).status == 0);
  CHECK(read_bytes(back.string()) == bytes);

  // Handshake with c_tuple = b_tuple: Bob must reject.
  Json corrupted = read_json_file(hs.string());
  corrupted["c_tuple"] = read_json_file(pub.string())["base_tuple"];
  const auto bad_hs = scratch("bad_hs.json");
  write_json_file(bad_hs.string(), corrupted);
  const Run rej = run({"exchange", "--public", pub.string(), "--private", priv.string(),
                       "--handshake", bad_hs.string(), "--payload-bytes", "8"});
  CHECK(rej.status != 0);
  CHECK(parse_json(rej.err)["error"] == "Rejected");
}

TEST_CASE("exchange is deterministic and pinned") {
  const Json a = run_json({"--seed", "7", "exchange"});
  const Json b = run_json({"--seed", "7", "exchange"});
  CHECK(a.dump() == b.dump());
  CHECK(a["transcript_hash"] == "7ddab71b4f875c0e");
  CHECK(run_json({"--seed", "8", "exchange", "--payload-bytes", "16"})["transcript_hash"] !=
        a["transcript_hash"]);
  CHECK(run_json({"--seed", "2", "exchange", "--preset", "basilica3", "--payload-bytes", "64"})
            ["round_trip"] == true);
}

TEST_CASE("demos") {
  const Json aag = run_json({"--seed", "4", "aag-demo"});
  CHECK(aag["keys_equal"] == true);
  const Json wp = run_json({"--seed", "4", "wp-cipher-demo", "--bits", "0110", "--steps", "20"});
  CHECK(wp["all_correct"] == true);
  CHECK(wp["results"].size() == 4);
  CHECK(run({"wp-cipher-demo", "--bits", "012"}).status != 0);
}

TEST_CASE("experiments via the command line") {
  const Run c = run({"--seed", "1", "experiment", "commute", "--N", "6", "--samples", "200"});
  REQUIRE(c.status == 0);
  CHECK(c.out.rfind("N,samples,noncommuting_fraction,undecided_fraction\n6,200,", 0) == 0);
  const Run d = run({"experiment", "commute", "--N", "6", "--samples", "200", "--diagonal"});
  CHECK(d.out.find("6,200,0.000000,0.000000") != std::string::npos);

  const Run rw = run({"experiment", "rewrite-space", "--word", "a", "--steps", "1", "--lp-depth", "1"});
  CHECK(rw.out == "step,count,truncated\n0,1,false\n1,77,false\n");

  const Run h = run({"experiment", "hamming", "--h-len", "0", "--samples", "10", "--message-len", "32"});
  CHECK(h.out == "h_len,samples,message_len,mean_distance,max_distance\n0,10,32,0.000000,0\n");
  const Json hj = run_json({"--format", "json", "experiment", "hamming", "--samples", "20"});
  CHECK(hj["max_distance"].get<int>() <= 256);
}
