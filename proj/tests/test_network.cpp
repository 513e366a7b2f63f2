#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace pidyn;

namespace {

bool rows_sum_to_one(const InfluenceNetwork& net) {
    for (int i = 0; i < net.size(); ++i) {
        Rational sum(0);
        for (const auto& e : net.row(i)) sum += Rational(e.num, net.row_den(i));
        if (sum != Rational(1)) return false;
    }
    return true;
}

bool identical(const InfluenceNetwork& a, const InfluenceNetwork& b) {
    return to_edge_list(a) == to_edge_list(b);
}

}  // namespace

TEST_CASE("edge list parsing") {
    SUBCASE("smallest valid input") {
        auto net = from_edge_list("n=2\n0 1 1/1\n1 0 1/1");
        CHECK(net.size() == 2);
        CHECK(net.weight(0, 1) == Rational(1));
        CHECK(net.weight(1, 0) == Rational(1));
    }
    SUBCASE("example-1 matrix") {
        auto net = from_edge_list(to_edge_list(testing::example1_network()));
        CHECK(net.weight(0, 2) == Rational(2, 5));
        CHECK(net.weight(3, 0) == Rational(1, 4));
        CHECK(rows_sum_to_one(net));
    }
    SUBCASE("row sum violation names the row") {
        CHECK_THROWS_WITH_AS(from_edge_list("n=2\n0 0 9/10\n1 1 1/1"),
                             doctest::Contains("row 0 sums to 9/10"), std::invalid_argument);
    }
    SUBCASE("malformed input reports the line") {
        CHECK_THROWS_WITH_AS(from_edge_list("n=2\n0 1 bogus\n"), doctest::Contains("line 2"),
                             std::invalid_argument);
        CHECK_THROWS_AS(from_edge_list("n=2\n0 5 1/1\n"), std::invalid_argument);
        CHECK_THROWS_AS(from_edge_list("n=2\n0 1 -1/2\n0 1 3/2\n"), std::invalid_argument);
        CHECK_THROWS_AS(from_edge_list("0 1 1/1\n"), std::invalid_argument);
    }
    SUBCASE("comments and round trip") {
        std::string text = "# comment\nn=2\n0 1 1/1\n1 0 1/1\n";
        auto net = from_edge_list(text);
        CHECK(from_edge_list(to_edge_list(net)).size() == 2);
        CHECK(to_edge_list(net) == to_edge_list(from_edge_list(to_edge_list(net))));
    }
}

TEST_CASE("lattice generator") {
    auto net = lattice(10, 10);
    CHECK(net.size() == 100);
    // interior node: 4 neighbors, each 1/4
    CHECK(net.weight(5 * 10 + 5, 5 * 10 + 4) == Rational(1, 4));
    CHECK(net.out_degree(5 * 10 + 5) == 4);

    auto tiny = lattice(1, 2);
    CHECK(tiny.size() == 2);
    CHECK(tiny.weight(0, 1) == Rational(1));

    auto quad = lattice(2, 2);
    CHECK(quad.out_degree(0) == 2);
    CHECK(quad.weight(0, 1) == Rational(1, 2));

    CHECK_THROWS_AS(lattice(1, 1), std::invalid_argument);

    // 2(2rc - r - c) directed edges
    for (auto [r, c] : {std::pair{3, 3}, {2, 5}, {1, 7}}) {
        auto g = lattice(r, c);
        long long edges = 0;
        for (int i = 0; i < g.size(); ++i) edges += g.out_degree(i);
        CHECK(edges == 2 * (2LL * r * c - r - c));
    }
    CHECK(rows_sum_to_one(net));
}

TEST_CASE("erdos-renyi generator") {
    Rng rng(7);
    SUBCASE("p=1 gives the complete digraph") {
        auto net = erdos_renyi(4, 1.0, rng);
        for (int i = 0; i < 4; ++i) {
            CHECK(net.out_degree(i) == 3);
            for (int j = 0; j < 4; ++j)
                if (i != j) CHECK(net.weight(i, j) == Rational(1, 3));
        }
        Rng other(99);
        CHECK(identical(net, erdos_renyi(4, 1.0, other)));
    }
    SUBCASE("p=0 gives self loops only") {
        auto net = erdos_renyi(3, 0.0, rng);
        for (int i = 0; i < 3; ++i) {
            CHECK(net.out_degree(i) == 1);
            CHECK(net.weight(i, i) == Rational(1));
        }
    }
    SUBCASE("empirical mean out-degree tracks n*p") {
        double total = 0;
        Rng r(12345);
        for (int rep = 0; rep < 100; ++rep) {
            auto net = erdos_renyi(100, 0.08, r);
            long long deg = 0;
            for (int i = 0; i < net.size(); ++i)
                for (const auto& e : net.row(i))
                    if (e.to != i) ++deg;
            total += static_cast<double>(deg) / net.size();
        }
        CHECK(total / 100 == doctest::Approx(99 * 0.08).epsilon(0.13));
    }
    SUBCASE("reproducible from the seed") {
        Rng a(42), b(42);
        CHECK(identical(erdos_renyi(30, 0.2, a), erdos_renyi(30, 0.2, b)));
    }
    CHECK_THROWS_AS(erdos_renyi(1, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi(5, 1.5, rng), std::invalid_argument);
}

TEST_CASE("watts-strogatz generator") {
    Rng rng(3);
    SUBCASE("beta=0 is the ring lattice") {
        auto net = watts_strogatz(10, 4, 0.0, rng);
        for (int i = 0; i < 10; ++i) {
            CHECK(net.out_degree(i) == 4);
            CHECK(net.weight(i, (i + 1) % 10) == Rational(1, 4));
            CHECK(net.weight(i, (i + 2) % 10) == Rational(1, 4));
        }
        Rng other(8);
        CHECK(identical(net, watts_strogatz(10, 4, 0.0, other)));
        // ring-lattice closed form: (k-2)*3 / (4(k-1)) = 1/2 for k=4
        CHECK(clustering_coefficient(net) == doctest::Approx(0.5));
    }
    SUBCASE("beta=1 destroys clustering") {
        double total = 0;
        Rng r(777);
        for (int rep = 0; rep < 50; ++rep) total += clustering_coefficient(watts_strogatz(100, 4, 1.0, r));
        CHECK(total / 50 < 0.1);
    }
    SUBCASE("rows stay stochastic and symmetric in the skeleton") {
        auto net = watts_strogatz(20, 4, 0.5, rng);
        CHECK(rows_sum_to_one(net));
        for (int i = 0; i < net.size(); ++i) {
            CHECK(net.out_degree(i) >= 1);
            for (const auto& e : net.row(i)) CHECK(net.has_edge(e.to, i));
        }
    }
    CHECK_THROWS_AS(watts_strogatz(10, 3, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz(4, 4, 0.1, rng), std::invalid_argument);
}

TEST_CASE("structural metrics") {
    Rng rng(1);
    auto complete = erdos_renyi(4, 1.0, rng);
    CHECK(clustering_coefficient(complete) == doctest::Approx(1.0));
    CHECK(density(complete) == doctest::Approx(1.0));

    auto cycle = watts_strogatz(8, 2, 0.0, rng);
    CHECK(clustering_coefficient(cycle) == doctest::Approx(0.0));

    CHECK(clustering_coefficient(lattice(3, 3)) == doctest::Approx(0.0));

    auto isolated = erdos_renyi(3, 0.0, rng);
    CHECK(density(isolated) == doctest::Approx(0.0));

    CHECK(density(testing::example1_network()) == doctest::Approx(1.0));
}

TEST_CASE("generator rows always sum to exactly 1") {
    Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        CHECK(rows_sum_to_one(erdos_renyi(12, 0.3, rng)));
        CHECK(rows_sum_to_one(watts_strogatz(12, 4, 0.4, rng)));
    }
}
