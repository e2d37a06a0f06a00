#include <doctest.h>

#include <map>

#include "segseed/seeding.hpp"

using namespace segseed;

TEST_CASE("ThresholdBands validation") {
    CHECK_NOTHROW(ThresholdBands{}.validate());
    CHECK_THROWS_WITH_AS((ThresholdBands{{0, 50}, {100, 90}, {170, 255}}.validate()),
                         doctest::Contains("invalid band"), DataError);
    CHECK_THROWS_WITH_AS((ThresholdBands{{0, 90}, {85, 169}, {170, 255}}.validate()),
                         doctest::Contains("overlap"), DataError);
    CHECK_THROWS_AS((ThresholdBands{{-1, 50}, {85, 169}, {170, 255}}.validate()),
                    DataError);
}

TEST_CASE("ThresholdBands parse round-trip") {
    ThresholdBands bands = ThresholdBands::parse("0,50,51,150,151,255");
    CHECK(bands.gm.lo == 51);
    CHECK(bands.to_string() == "0,50,51,150,151,255");
    CHECK_THROWS_AS(ThresholdBands::parse("1,2,3"), DataError);
    CHECK_THROWS_AS(ThresholdBands::parse("a,b,c,d,e,f"), DataError);
}

TEST_CASE("pool_from_thresholds splits pixels by band") {
    SUBCASE("2x2 image with known pools") {
        Image2D img(2, 2, std::vector<std::uint8_t>{10, 100, 200, 100});
        ThresholdBands bands{{0, 50}, {51, 150}, {151, 255}};
        CandidatePool pool = pool_from_thresholds(img, bands);
        CHECK(pool.for_class(1).size() == 1);
        CHECK(pool.for_class(2).size() == 2);
        CHECK(pool.for_class(3).size() == 1);
        CHECK(pool.for_class(1)[0] == Point{0, 0});
        CHECK(pool.for_class(3)[0] == Point{0, 1});
    }
    SUBCASE("constant image leaves two classes empty") {
        Image2D img(4, 4, 50);
        ThresholdBands bands{{40, 60}, {85, 169}, {170, 255}};
        CHECK_THROWS_WITH_AS(pool_from_thresholds(img, bands),
                             doctest::Contains("GM"), AlgorithmError);
    }
    SUBCASE("every pooled point lies inside its class band") {
        Image2D img(16, 16, 0);
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x)
                img.at(x, y) = static_cast<std::uint8_t>((x * 16 + y) % 256);
        ThresholdBands bands;
        CandidatePool pool = pool_from_thresholds(img, bands);
        for (std::uint8_t c = 1; c <= 3; ++c) {
            for (const Point& p : pool.for_class(c)) {
                int v = img.at(p);
                CHECK(v >= bands.for_class(c).lo);
                CHECK(v <= bands.for_class(c).hi);
            }
        }
    }
}

TEST_CASE("histogram_peak_seeds finds the three modes, ordered dark to bright") {
    SUBCASE("tri-modal image") {
        // Three well separated modes at 40, 120, 220 with unequal mass.
        Image2D img(20, 15, 0);
        int i = 0;
        for (int y = 0; y < 15; ++y) {
            for (int x = 0; x < 20; ++x, ++i) {
                img.at(x, y) = i % 3 == 0 ? 40 : (i % 3 == 1 ? 120 : 220);
            }
        }
        auto seeds = histogram_peak_seeds(img, 5);
        REQUIRE(seeds.size() == 3);
        CHECK(seeds[0].cls == 1);
        CHECK(img.at(seeds[0].point) == 40);
        CHECK(seeds[1].cls == 2);
        CHECK(img.at(seeds[1].point) == 120);
        CHECK(seeds[2].cls == 3);
        CHECK(img.at(seeds[2].point) == 220);

        // Row-major rule: each seed is the first pixel at its intensity.
        CHECK(seeds[0].point == Point{0, 0});
        CHECK(seeds[1].point == Point{1, 0});
        CHECK(seeds[2].point == Point{2, 0});
    }
    SUBCASE("constant image has no three peaks") {
        CHECK_THROWS_WITH_AS(histogram_peak_seeds(Image2D(8, 8, 100)),
                             doctest::Contains("insufficient"), AlgorithmError);
    }
    SUBCASE("bimodal image has no three peaks") {
        Image2D img(8, 8, 30);
        for (int x = 0; x < 8; ++x) img.at(x, 0) = 200;
        CHECK_THROWS_AS(histogram_peak_seeds(img), AlgorithmError);
    }
}

TEST_CASE("random_seeds draws one point per class") {
    SUBCASE("singleton pools force the choice") {
        CandidatePool pool;
        pool.by_class = {std::vector<Point>{{1, 2}}, {{3, 4}}, {{5, 6}}};
        for (std::uint64_t seed : {0ULL, 7ULL, 123456ULL}) {
            auto seeds = random_seeds(pool, seed);
            REQUIRE(seeds.size() == 3);
            CHECK(seeds[0].point == Point{1, 2});
            CHECK(seeds[1].point == Point{3, 4});
            CHECK(seeds[2].point == Point{5, 6});
        }
    }
    SUBCASE("same rng_seed, same output") {
        CandidatePool pool;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 50; ++i) pool.by_class[c].push_back({i, c});
        auto a = random_seeds(pool, 99);
        auto b = random_seeds(pool, 99);
        for (int i = 0; i < 3; ++i) CHECK(a[i].point == b[i].point);
    }
    SUBCASE("empty pool is an error") {
        CandidatePool pool;
        pool.by_class[0].push_back({0, 0});
        CHECK_THROWS_AS(random_seeds(pool, 0), AlgorithmError);
    }
    SUBCASE("draws are uniform (chi-square over 10^4 draws)") {
        CandidatePool pool;
        const int n = 100;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < n; ++i) pool.by_class[c].push_back({i, c});
        std::map<int, int> counts;
        const int draws = 10000;
        for (int d = 0; d < draws; ++d) {
            auto seeds = random_seeds(pool, static_cast<std::uint64_t>(d));
            ++counts[seeds[1].point.x];  // GM gene
        }
        double expected = static_cast<double>(draws) / n;
        double chi2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double diff = counts[i] - expected;
            chi2 += diff * diff / expected;
        }
        // 99 dof; mean 99, std sqrt(198). 99 + 4*sqrt(198) ~ 155.
        CHECK(chi2 < 155.0);
    }
}
