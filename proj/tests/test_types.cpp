#include <doctest.h>

#include "losr/types.hpp"

using namespace losr;

namespace {
PartitionType pt(Kind in, Kind out) { return {in, out}; }
const Kind I = Kind::Trivial, C = Kind::Classical, Q = Kind::Quantum;
}  // namespace

TEST_CASE("type string grammar round trips") {
  CHECK(to_string(pt(Q, C)) == "Q->C");
  CHECK(parse_partition_type("C->Q") == pt(C, Q));
  GlobalType g = parse_global_type("QQ->CC");
  REQUIRE(g.size() == 2);
  CHECK(g[0] == pt(Q, C));
  CHECK(to_string(g) == "QQ->CC");
  CHECK_THROWS(parse_global_type("QQ->C"));
  CHECK_THROWS(parse_partition_type("X->Y"));
}

TEST_CASE("kind embedding is the I < C < Q chain") {
  CHECK(embeds(Q, C));
  CHECK(embeds(C, I));
  CHECK(embeds(Q, Q));
  CHECK(!embeds(C, Q));
  CHECK(promote(C, Q) == Q);
  CHECK(promote(I, C) == C);
}

TEST_CASE("encodability grid: fixture over the six nontrivial types") {
  const std::vector<PartitionType> types = {pt(I, C), pt(I, Q), pt(C, C),
                                            pt(C, Q), pt(Q, C), pt(Q, Q)};
  const char* fixture[6] = {
      "YNNNNN",  // I->C encodes ...
      "YYNNNN",  // I->Q
      "YNYNNN",  // C->C
      "YYYY??",  // C->Q
      "YYYYYY",  // Q->C
      "YYYYYY",  // Q->Q
  };
  int unknown = 0;
  for (int t = 0; t < 6; ++t)
    for (int u = 0; u < 6; ++u) {
      Encode want = fixture[t][u] == 'Y'
                        ? Encode::Yes
                        : fixture[t][u] == 'N' ? Encode::No : Encode::Unknown;
      EncodeVerdict got = partition_encodes(types[t], types[u]);
      INFO(to_string(types[t]), " encodes ", to_string(types[u]));
      CHECK(got.value == want);
      if (got.value == Encode::Unknown) ++unknown;
    }
  CHECK(unknown == 2);
}

TEST_CASE("encodability provenance names the right argument") {
  CHECK(partition_encodes(pt(C, C), pt(I, Q)).provenance == "werner-states");
  CHECK(partition_encodes(pt(I, Q), pt(C, C)).provenance ==
        "losr-cannot-entangle");
  CHECK(partition_encodes(pt(Q, C), pt(I, Q)).provenance ==
        "semiquantum-games");
  CHECK(partition_encodes(pt(Q, C), pt(C, Q)).provenance == "thm-3");
  CHECK(partition_encodes(pt(Q, C), pt(Q, Q)).provenance == "thm-3");
  CHECK(partition_encodes(pt(C, Q), pt(Q, C)).provenance == "open");
  CHECK(partition_encodes(pt(Q, Q), pt(C, C)).provenance == "embed");
  CHECK(partition_encodes(pt(I, C), pt(I, Q)).provenance == "trans");
}

TEST_CASE("Yes-relation is transitively closed") {
  auto types = all_partition_types();
  for (const auto& t : types)
    for (const auto& u : types)
      for (const auto& v : types)
        if (partition_encodes(t, u).value == Encode::Yes &&
            partition_encodes(u, v).value == Encode::Yes)
          CHECK(partition_encodes(t, v).value == Encode::Yes);
}

TEST_CASE("global ordering: boxes and states are incomparable") {
  GlobalType boxes = parse_global_type("CC->CC");
  GlobalType states = parse_global_type("II->QQ");
  CHECK(global_encodes_sufficient(boxes, states).value == Encode::No);
  CHECK(global_encodes_sufficient(states, boxes).value == Encode::No);
  GlobalType sq = parse_global_type("QQ->CC");
  CHECK(global_encodes_sufficient(sq, states).value == Encode::Yes);
  CHECK(global_encodes_sufficient(sq, boxes).value == Encode::Yes);
  CHECK_THROWS(global_encodes_sufficient(boxes, GlobalType{pt(C, C)}));
}

TEST_CASE("trivial partitions are exactly those with trivial output") {
  CHECK(is_trivial_partition(pt(Q, I)));
  CHECK(is_trivial_partition(pt(I, I)));
  CHECK(!is_trivial_partition(pt(I, C)));
}
