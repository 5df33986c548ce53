#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "hexlc/config.hpp"

using namespace hexlc;

TEST_CASE("configs round trip byte for byte") {
  RunConfig cfg;
  const std::string text = config_to_string(cfg);
  RunConfig back = read_config_string(text);
  REQUIRE(config_to_string(back) == text);

  cfg.n = 12;
  cfg.lambda2 = 0.1 + 1.0 / 3.0;
  cfg.seed = 0xdeadbeefcafe1234ull;
  cfg.budget = 123456789012345ll;
  cfg.init = "states/ring.field";
  cfg.outdir = "out/run 7";
  cfg.eps = 2.2250738585072014e-308;
  const std::string text2 = config_to_string(cfg);
  RunConfig back2 = read_config_string(text2);
  REQUIRE(back2.n == cfg.n);
  REQUIRE(back2.lambda2 == cfg.lambda2);
  REQUIRE(back2.seed == cfg.seed);
  REQUIRE(back2.budget == cfg.budget);
  REQUIRE(back2.init == cfg.init);
  REQUIRE(back2.outdir == cfg.outdir);
  REQUIRE(back2.eps == cfg.eps);
  REQUIRE(config_to_string(back2) == text2);
}

TEST_CASE("comments and blank lines are tolerated, junk is not") {
  RunConfig cfg = read_config_string(
      "hexlc-config 1\n"
      "# a comment\n"
      "\n"
      "lambda2 = 150   # trailing comment\n"
      "  n = 20\n");
  REQUIRE(cfg.lambda2 == 150.0);
  REQUIRE(cfg.n == 20);

  REQUIRE_THROWS_AS(read_config_string("hexlc-config 1\nwibble = 3\n"), io_error);
  REQUIRE_THROWS_AS(read_config_string("hexlc-config 1\nlambda2 70\n"), io_error);
  REQUIRE_THROWS_AS(read_config_string("hexlc-config 2\nn = 8\n"), io_error);
  REQUIRE_THROWS_AS(read_config_string("n = 8\n"), io_error);
  REQUIRE_THROWS_AS(read_config_string("hexlc-config 1\nn = eight\n"), io_error);
}

TEST_CASE("string values that cannot round trip are refused at write time") {
  RunConfig cfg;
  cfg.outdir = "has#hash";
  REQUIRE_THROWS_AS(config_to_string(cfg), io_error);
  cfg.outdir = " padded";
  REQUIRE_THROWS_AS(config_to_string(cfg), io_error);
  cfg.outdir = "fine";
  REQUIRE_NOTHROW(config_to_string(cfg));
}
