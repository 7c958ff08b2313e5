#include <catch2/catch_amalgamated.hpp>

#include <utility>
#include <vector>

#include "reebedit/bottleneck.hpp"
#include "reebedit/persistence.hpp"
#include "support.hpp"

using namespace testsupport;
using reebedit::bottleneck;
using reebedit::bottleneck_oracle;
using reebedit::BottleneckValue;
using reebedit::Diagram;
using reebedit::extended_diagram;

namespace {

using PdPair = std::pair<Rational, Rational>;

PdPair pp(const std::string& a, const std::string& b) { return {rat(a), rat(b)}; }

}  // namespace

TEST_CASE("identical diagrams are at distance zero") {
  Diagram d = extended_diagram(genus2_noncanonical());
  BottleneckValue bv = bottleneck(d, d);
  CHECK_FALSE(bv.infinite);
  CHECK(bv.value == rat("0"));
  CHECK(matching_value(d, d, bv.matching) == rat("0"));
}

TEST_CASE("an unmatched finite pair can retire to the diagonal") {
  Diagram d1{{pp("0", "2")}, {}, pp("0", "10"), {}};
  Diagram d2{{}, {}, pp("0", "10"), {}};
  BottleneckValue bv = bottleneck(d1, d2);
  REQUIRE_FALSE(bv.infinite);
  CHECK(bv.value == rat("1"));  // (2 - 0) / 2
  CHECK(matching_value(d1, d2, bv.matching) == rat("1"));
  CHECK(bottleneck_oracle(d1, d2).value == rat("1"));
}

TEST_CASE("the essential component pair has no diagonal to hide on") {
  Diagram d1{{}, {}, pp("0", "10"), {}};
  Diagram d2{{}, {}, pp("1", "12"), {}};
  BottleneckValue bv = bottleneck(d1, d2);
  REQUIRE_FALSE(bv.infinite);
  CHECK(bv.value == rat("2"));  // max(|0-1|, |10-12|)
  CHECK(bottleneck_oracle(d1, d2).value == rat("2"));
}

TEST_CASE("cycle-count mismatch makes the distance infinite") {
  Diagram d1{{}, {}, pp("0", "3"), {pp("2", "1")}};
  Diagram d2{{}, {}, pp("0", "3"), {}};
  CHECK(bottleneck(d1, d2).infinite);
  CHECK(bottleneck_oracle(d1, d2).infinite);
  CHECK(bottleneck(extended_diagram(canonical_torus()), extended_diagram(sphere())).infinite);
}

TEST_CASE("matching a close point beats two diagonal retirements") {
  Diagram d1{{pp("0", "4")}, {}, pp("0", "10"), {}};
  Diagram d2{{pp("1", "4")}, {}, pp("0", "10"), {}};
  BottleneckValue bv = bottleneck(d1, d2);
  CHECK(bv.value == rat("1"));
  CHECK(matching_value(d1, d2, bv.matching) == rat("1"));
}

TEST_CASE("a uniform label shift moves the diagram by exactly that shift") {
  Diagram a = extended_diagram(canonical_torus());
  Diagram b = extended_diagram(shifted(canonical_torus(), rat("1/4")));
  BottleneckValue bv = bottleneck(a, b);
  REQUIRE_FALSE(bv.infinite);
  CHECK(bv.value == rat("1/4"));
}

TEST_CASE("the tight genus-2 pair sits at bottleneck distance one half") {
  BottleneckValue bv = bottleneck(extended_diagram(tight_pair_f()), extended_diagram(tight_pair_g()));
  REQUIRE_FALSE(bv.infinite);
  CHECK(bv.value == rat("1/2"));
}

TEST_CASE("equal diagrams of different graphs are at distance zero") {
  BottleneckValue bv =
      bottleneck(extended_diagram(equal_diagram_f()), extended_diagram(equal_diagram_g()));
  REQUIRE_FALSE(bv.infinite);
  CHECK(bv.value == rat("0"));
}

TEST_CASE("search agrees with the exhaustive matcher on random diagrams") {
  reebedit::Rng rng(4242);
  for (int i = 0; i < 60; ++i) {
    Diagram d1 = random_diagram(rng);
    Diagram d2 = random_diagram(rng);
    BottleneckValue fast = bottleneck(d1, d2);
    BottleneckValue slow = bottleneck_oracle(d1, d2);
    REQUIRE(fast.infinite == slow.infinite);
    if (!fast.infinite) {
      CHECK(fast.value == slow.value);
      CHECK(matching_value(d1, d2, fast.matching) == fast.value);
      // symmetry
      CHECK(bottleneck(d2, d1).value == fast.value);
    }
  }
}

TEST_CASE("the oracle refuses parts beyond its exhaustive range") {
  Diagram big;
  big.ess0 = pp("0", "100");
  for (int i = 0; i < 8; ++i) big.ord0.push_back(pp(std::to_string(i), std::to_string(i + 1)));
  CHECK_THROWS_AS(bottleneck_oracle(big, big), std::invalid_argument);
}
