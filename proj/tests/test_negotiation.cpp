#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "hgmp/negotiation.hpp"
#include "support/oracles.hpp"

using namespace hgmp;

namespace {

std::array<double, 3> sorted(std::array<double, 3> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

TEST_CASE("online board keeps one entry per hunter, oldest first") {
  OnlineBoard board;
  board.announce({2, 10, {1, 1}, 5});
  board.announce({0, 11, {2, 2}, 7});
  board.announce({1, 12, {3, 3}, 5});
  CHECK_THROWS_AS(board.announce({2, 13, {4, 4}, 8}), ProtocolError);
  const auto waiting = board.waiting();
  REQUIRE(waiting.size() == 3);
  CHECK(waiting[0].hunter == 1);
  CHECK(waiting[1].hunter == 2);
  CHECK(waiting[2].hunter == 0);
  board.withdraw(2);
  CHECK_FALSE(board.has(2));
  CHECK(board.size() == 2);
}

TEST_CASE("offers are the interval's upper bound, midpoint and lower bound") {
  Rng rng(1);
  CHECK(sorted(make_offers({0.0, 1.0, false}, rng)) == std::array<double, 3>{0.0, 0.5, 1.0});
  CHECK(sorted(make_offers({1.0, 1.0, false}, rng)) == std::array<double, 3>{0.0, 0.0, 0.0});
  const auto o = sorted(make_offers({0.4, 1.0, false}, rng));
  CHECK(o[0] == 0.0);
  CHECK(o[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(o[2] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK_THROWS_AS(make_offers(ProfitInterval::none(), rng), ProtocolError);
}

TEST_CASE("offer order is a uniform permutation") {
  Rng rng(77);
  std::set<std::array<double, 3>> seen;
  int first_is_zero = 0;
  const int n = 6000;
  for (int i = 0; i < n; ++i) {
    const auto o = make_offers({0.0, 1.0, false}, rng);
    seen.insert(o);
    first_is_zero += o[0] == 0.0;
  }
  CHECK(seen.size() == 6);
  CHECK(first_is_zero == doctest::Approx(n / 3.0).epsilon(0.1));
}

TEST_CASE("offer evaluation") {
  CHECK(evaluate_offer({0.0, 1.0, false}, 0.0) == Response::kAccept);
  CHECK(evaluate_offer({1.0 / 9.0, 1.0, false}, 0.0) == Response::kReject);
  CHECK(evaluate_offer(ProfitInterval::none(), 0.7) == Response::kReject);
}

TEST_CASE("bargaining") {
  Rng rng(4);
  SUBCASE("full intervals settle on the first offer") {
    const NegotiationOutcome out = bargain({0.0, 1.0, false}, 3, {0.0, 1.0, false}, rng);
    REQUIRE(out.succeeded());
    CHECK(out.transcript.size() == 2);
    CHECK(out.agreement->gatherer == 3);
    CHECK(out.agreement->shares.gatherer == out.transcript[0].share);
    CHECK(out.agreement->shares.hunter + out.agreement->shares.gatherer == 1.0);
  }
  SUBCASE("zero offer rejected, the next acceptable one taken") {
    const ProfitInterval g{1.0 / 9.0, 1.0, false};
    for (int i = 0; i < 50; ++i) {
      const NegotiationOutcome out = bargain({0.0, 1.0, false}, 0, g, rng);
      REQUIRE(out.succeeded());
      CHECK(out.agreement->shares.gatherer >= 1.0 / 9.0);
      for (const NegotiationMessage& m : out.transcript) {
        if (m.kind == MessageKind::kReject) CHECK(m.share == 0.0);
      }
    }
  }
  SUBCASE("state 3 gatherer rejects all three") {
    const NegotiationOutcome out = bargain({0.2, 1.0, false}, 0, ProfitInterval::none(), rng);
    CHECK_FALSE(out.succeeded());
    CHECK(out.transcript.size() == 6);
  }
}

TEST_CASE("bids are truthful valuations") {
  CHECK(place_bid(0, 1, {0.0, 1.0, false}).hunter_share == 1.0);
  CHECK(place_bid(0, 1, {1.0 / 9.0, 1.0, false}).hunter_share == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(place_bid(0, 1, {1.0, 1.0, false}).hunter_share == 0.0);
  CHECK_THROWS_AS(place_bid(0, 1, ProfitInterval::none()), ProtocolError);
}

TEST_CASE("second-price auction") {
  Rng rng(9);
  const std::vector<Bid> bids = {{0, 5, 0.3}, {1, 5, 0.7}, {2, 5, 0.5}};
  const NegotiationOutcome out = run_auction(bids, {0.2, 1.0, false}, rng);
  REQUIRE(out.succeeded());
  CHECK(out.agreement->gatherer == 1);
  CHECK(out.agreement->shares.hunter == 0.5);
  CHECK(out.agreement->shares.gatherer == 0.5);

  const std::vector<Bid> low = {{0, 5, 0.3}, {1, 5, 0.1}};
  CHECK_FALSE(run_auction(low, {0.2, 1.0, false}, rng).succeeded());

  const std::vector<Bid> lone = {{0, 5, 0.3}};
  CHECK_THROWS_AS(run_auction(lone, {0.2, 1.0, false}, rng), ProtocolError);
  CHECK_THROWS_AS(run_auction(bids, ProfitInterval::none(), rng), ProtocolError);
}

TEST_CASE("auction ties are split at random") {
  Rng rng(12);
  const std::vector<Bid> bids = {{0, 1, 0.6}, {1, 1, 0.6}, {2, 1, 0.2}};
  int zero = 0;
  for (int i = 0; i < 2000; ++i) {
    const NegotiationOutcome out = run_auction(bids, {0.0, 1.0, false}, rng);
    REQUIRE(out.succeeded());
    CHECK(out.agreement->shares.hunter == 0.6);
    zero += out.agreement->gatherer == 0;
  }
  CHECK(zero == doctest::Approx(1000).epsilon(0.1));
}

TEST_CASE("verify_nash flags constructed violations") {
  const MarginParams g = MarginParams::gatherer(1, 1, 10, 10);
  const MarginParams h = MarginParams::hunter(1, 1, 10, 10);
  const std::vector<BidderProfile> bidders = {{0, 12.0, g}, {1, 15.0, g}};

  NegotiationOutcome honest;
  honest.mechanism = Mechanism::kAuction;
  honest.bids = {{0, 1, 0.8}, {1, 1, 0.5}};
  honest.agreement = Agreement{0, Shares{0.5, 0.5}};
  CHECK(verify_nash(honest, bidders, 8.0, h).all());

  NegotiationOutcome overpay = honest;
  overpay.agreement = Agreement{0, Shares{0.9, 0.1}};
  const NashReport r1 = verify_nash(overpay, bidders, 8.0, h);
  CHECK_FALSE(r1.winner_valuation_sufficient);
  CHECK(r1.hunter_nonnegative);

  NegotiationOutcome underpaid_hunter = honest;
  underpaid_hunter.agreement = Agreement{0, Shares{0.1, 0.9}};
  CHECK_FALSE(verify_nash(underpaid_hunter, bidders, 15.0, h).hunter_nonnegative);

  NegotiationOutcome wrong_winner = honest;
  wrong_winner.agreement = Agreement{1, Shares{0.5, 0.5}};
  wrong_winner.bids = {{0, 1, 0.8}, {1, 1, 0.5}};
  CHECK_FALSE(verify_nash(wrong_winner, bidders, 8.0, h).winner_bid_sufficient);

  NegotiationOutcome failed;
  failed.mechanism = Mechanism::kAuction;
  CHECK_THROWS_AS(verify_nash(failed, bidders, 8.0, h), std::invalid_argument);
  NegotiationOutcome bargained = honest;
  bargained.mechanism = Mechanism::kBargain;
  CHECK_THROWS_AS(verify_nash(bargained, bidders, 8.0, h), std::invalid_argument);
}

TEST_CASE("property: random auctions satisfy the equilibrium conditions and agree with the rule oracle") {
  Rng rng(31337);
  for (int n = 0; n < 2000; ++n) {
    const MarginParams hp = MarginParams::hunter(rng.uniform(0, 1), rng.uniform(0.01, 1), 140, 140);
    const double hunter_cost = rng.uniform(0, uncertainty_radius(hp));
    const ProfitInterval hi = profit_interval(hunter_cost, hp);
    const std::size_t k = 2 + rng.uniform_index(5);
    std::vector<BidderProfile> profiles;
    std::vector<Bid> bids;
    for (std::size_t j = 0; j < k; ++j) {
      const MarginParams gp = MarginParams::gatherer(rng.uniform(0, 1), rng.uniform(0.01, 1), 140, 140);
      const double cost = rng.uniform(0, uncertainty_radius(gp));
      profiles.push_back({static_cast<AgentId>(j), cost, gp});
      bids.push_back(place_bid(static_cast<AgentId>(j), 0, profit_interval(cost, gp)));
    }
    const NegotiationOutcome out = run_auction(bids, hi, rng);
    std::vector<double> values;
    for (const Bid& b : bids) values.push_back(b.hunter_share);
    std::sort(values.rbegin(), values.rend());
    CHECK(out.succeeded() == (values[1] >= hi.lower));
    if (!out.succeeded()) continue;
    CHECK(out.agreement->shares.hunter == values[1]);
    CHECK(bids[static_cast<std::size_t>(out.agreement->gatherer)].hunter_share == values[0]);
    CHECK(verify_nash(out, profiles, hunter_cost, hp).all());
  }
}
