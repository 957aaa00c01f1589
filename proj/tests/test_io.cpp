#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hhnn/io.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace hhnn;
using nlohmann::json;

namespace {

const AlgebraPtr kC = builtin_algebra("C").algebra;

}  // namespace

TEST_CASE("algebra documents round-trip exactly") {
  const AlgebraSystem t = builtin_algebra("T");
  const json jt = algebra_to_json(*t.algebra, t.involution);
  const AlgebraSystem back = algebra_from_json(jt);
  CHECK(*back.algebra == *t.algebra);
  CHECK(back.algebra->name() == "T");
  CHECK(back.involution == t.involution);

  // non-integer constants survive because cells are exact rational strings
  const AlgebraPtr half = clifford2(Rat(1, 2));
  const json jh = algebra_to_json(*half, Involution::natural(2));
  CHECK(jh["constants"][static_cast<std::size_t>((1 * 2 + 1) * 2 + 0)] == "1/2");
  CHECK(*algebra_from_json(jh).algebra == *half);
}

TEST_CASE("algebra documents are validated") {
  const AlgebraSystem c = builtin_algebra("C");
  json j = algebra_to_json(*c.algebra, c.involution);

  json extra = j;
  extra["comment"] = "nope";
  CHECK_THROWS_AS(algebra_from_json(extra), std::invalid_argument);

  json missing = j;
  missing.erase("constants");
  CHECK_THROWS_AS(algebra_from_json(missing), std::invalid_argument);

  json short_tensor = j;
  short_tensor["constants"].erase(0);
  CHECK_THROWS_AS(algebra_from_json(short_tensor), std::invalid_argument);

  json bad_unit = j;
  bad_unit["constants"][0] = "0";  // e_0 e_0 must stay e_0
  CHECK_THROWS_AS(algebra_from_json(bad_unit), std::invalid_argument);
}

TEST_CASE("network configs round-trip") {
  const NetworkConfig preset = load_network_config("two-neuron:U:split");
  const json j = network_config_to_json(preset.net, preset.initial);
  CHECK(j.dump() == network_config_to_json(preset.net, preset.initial).dump());

  const NetworkConfig back = network_config_from_json(j);
  CHECK(*back.net.algebra() == *preset.net.algebra());
  CHECK(back.net.tau() == preset.net.tau());
  CHECK(back.net.activation().id() == "split");
  CHECK(back.net.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(back.net.w(i, k) == preset.net.w(i, k));
  REQUIRE(back.initial.has_value());
  CHECK((*back.initial)[0] == (*preset.initial)[0]);
  CHECK((*back.initial)[1] == (*preset.initial)[1]);

  Schedule sched{Schedule::Kind::random_permutation, 42};
  const Network one(kC, Involution::natural(2), Activation::csgn(4), 1,
                    {HNumber(kC, {0.25, -0.5})}, sched);
  const NetworkConfig rt = network_config_from_json(network_config_to_json(one));
  CHECK(rt.net.schedule().kind == Schedule::Kind::random_permutation);
  CHECK(rt.net.schedule().seed == 42);
  CHECK(rt.net.activation().id() == "csgn:4");
  CHECK(rt.net.w(0, 0) == one.w(0, 0));
  CHECK_FALSE(rt.initial.has_value());
}

TEST_CASE("network configs are validated") {
  const NetworkConfig preset = load_network_config("two-neuron:C:split");
  json j = network_config_to_json(preset.net, preset.initial);

  json extra = j;
  extra["bogus"] = 1;
  CHECK_THROWS_AS(network_config_from_json(extra), std::invalid_argument);

  json short_weights = j;
  short_weights["weights"].erase(3);
  CHECK_THROWS_AS(network_config_from_json(short_weights), std::invalid_argument);

  json bad_schedule = j;
  bad_schedule["schedule"] = "sometimes";
  CHECK_THROWS_AS(network_config_from_json(bad_schedule), std::invalid_argument);

  json bad_initial = j;
  bad_initial["initial"] = json::array({json::array({1.0, 1.0})});
  CHECK_THROWS_AS(network_config_from_json(bad_initial), std::invalid_argument);

  // involutions may be written as names instead of sign arrays
  json named = j;
  named["involution"] = "natural";
  CHECK(network_config_from_json(named).net.tau() == Involution::natural(2));
}

TEST_CASE("presets pick the hermitian-making involutions") {
  const struct {
    const char* id;
    Involution tau;
  } expected[] = {
      {"two-neuron:C:split", Involution::natural(2)},
      {"two-neuron:C:conj_split", Involution::identity(2)},
      {"two-neuron:U:split", Involution::identity(2)},
      {"two-neuron:U:conj_split", Involution::natural(2)},
      {"two-neuron:D:split", Involution::identity(2)},
      {"two-neuron:D:conj_split", Involution::identity(2)},
  };
  for (const auto& e : expected) {
    const NetworkConfig cfg = load_network_config(e.id);
    CHECK(cfg.net.tau() == e.tau);
    CHECK(cfg.net.size() == 2);
    CHECK(cfg.net.w(0, 0) == HNumber::zero(cfg.net.algebra()));
    CHECK(cfg.net.w(0, 1) == HNumber(cfg.net.algebra(), {1.0, 3.0}));
    CHECK(cfg.net.w(1, 0) == cfg.net.w(0, 1));
    REQUIRE(cfg.initial.has_value());
    CHECK((*cfg.initial)[0] == HNumber(cfg.net.algebra(), {-1.0, -1.0}));
    CHECK((*cfg.initial)[1] == HNumber(cfg.net.algebra(), {1.0, 1.0}));
  }

  const NetworkConfig real = load_network_config("two-neuron-real:C");
  CHECK(real.net.size() == 4);
  CHECK(real.net.algebra()->dim() == 1);
  const double wc[4][4] = {{0, 0, 1, -3}, {0, 0, 3, 1}, {1, -3, 0, 0}, {3, 1, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) CHECK(real.net.w(i, k)[0] == wc[i][k]);
  REQUIRE(real.initial.has_value());
  const double flat[4] = {-1, -1, 1, 1};
  for (int i = 0; i < 4; ++i) CHECK((*real.initial)[static_cast<std::size_t>(i)][0] == flat[i]);

  CHECK_THROWS_AS(load_network_config("two-neuron:Q:split"), std::invalid_argument);
  CHECK_THROWS_AS(load_network_config("two-neuron:C:sigma"), std::invalid_argument);
  CHECK_THROWS_AS(load_network_config("two-neuron:C"), std::invalid_argument);
  CHECK_THROWS_AS(load_network_config("no-such-file.json"), std::invalid_argument);
}

TEST_CASE("config files load like inline documents") {
  const NetworkConfig preset = load_network_config("two-neuron:D:split");
  const std::string path = "io_test_config.json";
  write_text_file(path, network_config_to_json(preset.net, preset.initial).dump(2));
  const NetworkConfig loaded = load_network_config(path);
  CHECK(*loaded.net.algebra() == *preset.net.algebra());
  CHECK(loaded.net.activation().id() == "split");
  REQUIRE(loaded.initial.has_value());
  CHECK((*loaded.initial)[0] == (*preset.initial)[0]);
  std::remove(path.c_str());
}

TEST_CASE("trace csv rendering") {
  const NetworkConfig cfg = load_network_config("two-neuron:U:split");
  const Trace trace = run(cfg.net, *cfg.initial);
  std::ostringstream os;
  write_trace_csv(os, trace);
  CHECK(os.str() ==
        "t,neuron,changed,energy\n"
        "0,0,1,-8\n"
        "1,1,0,-8\n"
        "2,0,0,-8\n"
        "3,1,0,-8\n");

  std::ostringstream again;
  write_trace_csv(again, trace);
  CHECK(again.str() == os.str());

  // fractional energies keep full precision
  Trace t;
  t.events.push_back(
      {0, 2, true, HNumber::one(kC), HNumber::one(kC), HNumber::one(kC), -1.0 / 3.0});
  std::ostringstream frac;
  write_trace_csv(frac, t);
  CHECK(frac.str() == "t,neuron,changed,energy\n0,2,1,-0.33333333333333331\n");
}

TEST_CASE("classification documents") {
  const NetworkConfig cfg = load_network_config("two-neuron:U:split");
  const TransitionGraph g = enumerate_graph(cfg.net);
  const json j = classification_to_json(g, classify(g));
  CHECK(j["counts"]["nodes"] == 16);
  CHECK(j["counts"]["edges"] == 24);
  CHECK(j["counts"]["fixed_points"] == 4);
  CHECK(j["counts"]["cyclic_nodes"] == 0);
  CHECK(j["fixed_points"] == json::array({0, 7, 10, 13}));
  CHECK(j["cyclic_nodes"] == json::array());
}

TEST_CASE("hashing and hex rendering") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("ab") != fnv1a64("ba"));
  CHECK(hex64(0) == "0x0000000000000000");
  CHECK(hex64(0xcbf29ce484222325ULL) == "0xcbf29ce484222325");
}

TEST_CASE("text file round-trip") {
  const std::string path = "io_test_blob.txt";
  const std::string content = "line\nwith bytes \x01\x02\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), std::runtime_error);
}
