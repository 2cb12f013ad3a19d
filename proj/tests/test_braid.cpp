#include "doctest.h"
#include "trihom/braid.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace trihom;

namespace {

BraidWord random_braid(std::mt19937& rng, int n, int len) {
  BraidWord b;
  b.strands = n;
  std::uniform_int_distribution<int> g(1, n - 1), s(0, 1);
  for (int k = 0; k < len; ++k) b.word.push_back(s(rng) ? g(rng) : -g(rng));
  return b;
}

// a random knot braid: keep drawing until the closure is connected
BraidWord random_knot(std::mt19937& rng, int n, int len) {
  // an n-cycle has the parity of n-1
  if ((len - n + 1) % 2) ++len;
  for (;;) {
    auto b = random_braid(rng, n, len);
    if (closure_info(b).is_knot()) return b;
  }
}

}  // namespace

TEST_CASE("parse figure-eight braid") {
  auto b = parse_braid("n=3: 1 -2 1 -2");
  CHECK(b.strands == 3);
  CHECK(b.word == std::vector<int>{1, -2, 1, -2});
  CHECK(b.to_string() == "n=3: 1 -2 1 -2");
  CHECK(parse_braid(b.to_string()) == b);
}

TEST_CASE("parse identity and errors") {
  auto b = parse_braid("n=1:");
  CHECK(b.strands == 1);
  CHECK(b.word.empty());
  CHECK_THROWS_AS(parse_braid("n=2: 3"), BraidError);
  CHECK_THROWS_AS(parse_braid("n=2: 0"), BraidError);
  CHECK_THROWS_AS(parse_braid("n=2: 1x"), BraidError);
  CHECK_THROWS_AS(parse_braid("2: 1"), BraidError);
  CHECK_THROWS_AS(parse_braid("n=2 1"), BraidError);
}

TEST_CASE("closure info") {
  auto u = closure_info(parse_braid("n=1:"));
  CHECK(u.perm == std::vector<int>{0});
  CHECK(u.writhe == 0);
  CHECK(u.components == 1);
  auto t = closure_info(parse_braid("n=2: 1 1 1"));
  CHECK(t.perm == std::vector<int>{1, 0});
  CHECK(t.writhe == 3);
  CHECK(t.components == 1);
  auto h = closure_info(parse_braid("n=2: 1 1"));
  CHECK(h.perm == std::vector<int>{0, 1});
  CHECK(h.writhe == 2);
  CHECK(h.components == 2);
}

TEST_CASE("signature examples") {
  CHECK(signature(parse_braid("n=2: -1 -1 -1")) == 2);
  CHECK(signature(parse_braid("n=2: 1 1 1")) == -2);
  CHECK(signature(parse_braid("n=1:")) == 0);
  CHECK(signature(parse_braid("n=3: 1 -2 1 -2")) == 0);
  CHECK_THROWS_AS(signature(parse_braid("n=2: 1 1")), BraidError);
}

TEST_CASE("signature matches every bundled fixture") {
  int seen = 0;
  for (auto& ent : std::filesystem::directory_iterator(TRIHOM_SOURCE_DIR "/fixtures")) {
    std::ifstream in(ent.path());
    std::string line, braid;
    int sigma = 0;
    bool have = false;
    while (std::getline(in, line)) {
      if (line.rfind("braid ", 0) == 0) braid = line.substr(6);
      if (line.rfind("signature ", 0) == 0) {
        sigma = std::stoi(line.substr(10));
        have = true;
      }
    }
    if (braid.empty() || !have) continue;
    CAPTURE(ent.path().filename().string());
    CHECK(signature(parse_braid(braid)) == sigma);
    ++seen;
  }
  CHECK(seen >= 30);
}

TEST_CASE("signature is odd under mirror") {
  std::mt19937 rng(5);
  for (int it = 0; it < 80; ++it) {
    auto b = random_knot(rng, 2 + it % 4, 5 + it % 10);
    CHECK(signature(mirror(b)) == -signature(b));
  }
}

TEST_CASE("signature is invariant under Markov moves") {
  std::mt19937 rng(9);
  for (int it = 0; it < 80; ++it) {
    auto b = random_knot(rng, 2 + it % 3, 4 + it % 9);
    int s = signature(b);
    CHECK(signature(stabilize(b, 1)) == s);
    CHECK(signature(stabilize(b, -1)) == s);
    CHECK(signature(rotate(b)) == s);
    CHECK(signature(stabilize(stabilize(b, -1), 1)) == s);
  }
}

TEST_CASE("components are invariant under braid relations") {
  std::mt19937 rng(13);
  for (int it = 0; it < 50; ++it) {
    auto b = random_braid(rng, 4, 6);
    int c = closure_info(b).components;
    auto b2 = b;
    // insert s1 s2 s1 / s2 s1 s2 and a cancelling pair
    b.word.insert(b.word.begin() + 2, {1, 2, 1, 3, -3});
    b2.word.insert(b2.word.begin() + 2, {2, 1, 2});
    CHECK(closure_info(b).components == closure_info(b2).components);
    (void)c;
  }
}
