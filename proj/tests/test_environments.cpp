#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "euler/environments.hpp"
#include "euler/mdp.hpp"
#include "oracles.hpp"

using euler::BanditSpec;
using euler::build;
using euler::ChainSpec;
using euler::DeterministicChainSpec;
using euler::EnvSpec;
using euler::RandomMdpSpec;
using euler::RewardKind;
using euler::Rng;
using euler::SparseRewardSpec;
using euler::step;

TEST_CASE("chain of four matches its drawn edge labels") {
    auto mdp = build(ChainSpec{4});
    CHECK(mdp.num_states == 4);
    CHECK(mdp.num_actions == 2);
    CHECK(mdp.horizon == 4);
    CHECK(mdp.transitions[0][1][1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(mdp.transitions[0][1][0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mdp.rewards[0][0].mean == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(mdp.rewards[0][0].kind == RewardKind::deterministic);
    CHECK(mdp.rewards[3][1].mean == 1.0);
    CHECK(mdp.transitions[3][1][3] == 1.0);
    CHECK(mdp.transitions[2][0][1] == 1.0); // left walks back deterministically
    CHECK(mdp.start_states[0] == 1.0);
}

TEST_CASE("every family builds a valid model") {
    build(ChainSpec{3}).validate();
    build(DeterministicChainSpec{6}).validate();
    build(EnvSpec{euler::random_bandit(4, 3, 5, 2)}).validate();
    SparseRewardSpec sparse{10, 6, 2, 4};
    build(sparse).validate();
    RandomMdpSpec random{5, 2, 6, 9, 0.5};
    build(random).validate();
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(build(ChainSpec{1}), std::invalid_argument);
    CHECK_THROWS_AS(build(SparseRewardSpec{5, 2, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build(SparseRewardSpec{5, 5, 2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(build(RandomMdpSpec{3, 2, 4, 1, 0.0}), std::invalid_argument);
    BanditSpec bad;
    bad.num_states = 2;
    bad.num_actions = 2;
    bad.horizon = 3;
    bad.context_dist = {0.6, 0.6};
    bad.reward_means = {{0.1, 0.2}, {0.3, 0.4}};
    CHECK_THROWS_AS(build(EnvSpec{bad}), std::invalid_argument);
}

TEST_CASE("the chain wants to advance everywhere at the first step") {
    for (int n = 3; n <= 16; ++n) {
        auto mdp = build(ChainSpec{n});
        auto sol = euler::optimal_values(mdp);
        for (int s = 0; s < n; ++s) CHECK(sol.policy[0][s] == 1);
        // Advancing beats farming the small left-loop reward from the start.
        CHECK(sol.values[0][0] > 0.25);
    }
}

TEST_CASE("deterministic chains have zero environmental norm") {
    for (int n : {3, 5, 8}) {
        CHECK(euler::environmental_norm(build(DeterministicChainSpec{n})) == 0.0);
    }
}

TEST_CASE("bandit builds keep the successor value range below one") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto spec = euler::random_bandit(4, 3, 6, seed);
        auto mdp = build(EnvSpec{spec});
        CHECK(euler::successor_range(mdp) <= 1.0 + 1e-12);
        for (int s = 0; s < mdp.num_states; ++s)
            for (int a = 0; a < mdp.num_actions; ++a)
                CHECK(mdp.transitions[s][a] == spec.context_dist);
    }
}

TEST_CASE("sparse-reward builds cannot pay more than one per episode") {
    for (int h : {5, 10, 20}) {
        SparseRewardSpec spec{h, 6, 2, 4};
        auto mdp = build(spec);
        CHECK(euler::max_return(mdp) <= 1.0);
        CHECK(euler::max_return(mdp) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(oracle::max_return_search(mdp) <= 1.0);
    }
    // The ceiling maximizes over every start state, so even a goal that is
    // out of reach from the corridor start still admits a return of one.
    SparseRewardSpec unreachable{3, 6, 2, 4};
    CHECK(euler::max_return(build(unreachable)) == doctest::Approx(1.0));
}

TEST_CASE("steps through deterministic models ignore the generator state") {
    auto mdp = build(DeterministicChainSpec{4});
    Rng a(1), b(999);
    auto ra = step(mdp, 0, 1, a);
    auto rb = step(mdp, 0, 1, b);
    CHECK(ra.next_state == rb.next_state);
    CHECK(ra.reward == rb.reward);
    CHECK(ra.next_state == 1);
    CHECK(ra.reward == 0.0);
}

TEST_CASE("step frequencies match the kernel") {
    auto mdp = build(ChainSpec{8});
    Rng rng(2718);
    const int n = 100000;
    int advanced = 0;
    for (int i = 0; i < n; ++i) {
        auto sr = step(mdp, 0, 1, rng);
        if (sr.next_state == 1) ++advanced;
    }
    const double p = 7.0 / 8.0;
    CHECK(std::abs(static_cast<double>(advanced) / n - p) <
          3.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("certain bernoulli rewards always pay") {
    euler::TabularMDP mdp = build(ChainSpec{3});
    mdp.rewards[0][0] = euler::RewardModel::bernoulli(1.0);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) CHECK(step(mdp, 0, 0, rng).reward == 1.0);
}

TEST_CASE("equal seeds build identical models") {
    RandomMdpSpec spec{5, 3, 6, 31, 0.7};
    auto a = build(spec);
    auto b = build(spec);
    CHECK(a.transitions == b.transitions);
    for (int s = 0; s < a.num_states; ++s)
        for (int ac = 0; ac < a.num_actions; ++ac)
            CHECK(a.rewards[s][ac].mean == b.rewards[s][ac].mean);

    auto ba = euler::random_bandit(4, 2, 5, 12);
    auto bb = euler::random_bandit(4, 2, 5, 12);
    CHECK(ba.context_dist == bb.context_dist);
    CHECK(ba.reward_means == bb.reward_means);

    auto bc = euler::random_bandit(4, 2, 5, 13);
    CHECK(ba.context_dist != bc.context_dist);
}

TEST_CASE("environment names are stable identifiers") {
    CHECK(euler::env_name(ChainSpec{8}) == "chain-n8");
    CHECK(euler::env_name(DeterministicChainSpec{5}) == "det-chain-s5");
    CHECK(euler::env_name(SparseRewardSpec{10, 6, 2, 4}) == "sparse-s6h10");
}
