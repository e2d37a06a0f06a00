#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "segseed/pgm.hpp"
#include "segseed/phantom.hpp"
#include "test_util.hpp"

using namespace segseed;

namespace {

int run_cli(const std::string& args) {
    std::string command = std::string(SEGSEED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("exit codes follow the 0/1/2/3 contract") {
    TempDir tmp;
    Phantom phantom = generate({32, 32, {40, 120, 220}, 0.0,
                                PhantomGeometry::concentric, 1});
    save_pgm(phantom.image, tmp.file("image.pgm"));
    save_label_pgm(phantom.labels, tmp.file("labels.pgm"));
    std::string out = (tmp.path / "out").string();

    SUBCASE("success is 0") {
        CHECK(run_cli("segment --input " + tmp.file("image.pgm").string() +
                      " --seeds \"2:16,9;3:16,16;1:16,3\" --output-dir " + out) == 0);
    }
    SUBCASE("no subcommand is a usage error") {
        CHECK(run_cli("") == 1);
    }
    SUBCASE("two seeds instead of three is a usage error") {
        CHECK(run_cli("segment --input " + tmp.file("image.pgm").string() +
                      " --seeds \"2:1,1;3:2,2\" --output-dir " + out) == 1);
    }
    SUBCASE("missing input file is a data error") {
        CHECK(run_cli("segment --input " + tmp.file("missing.pgm").string() +
                      " --seeds \"2:1,1;3:2,2;1:3,3\" --output-dir " + out) == 2);
    }
    SUBCASE("dimension mismatch is a data error") {
        Phantom other = generate({48, 48, {40, 120, 220}, 0.0,
                                  PhantomGeometry::concentric, 1});
        save_label_pgm(other.labels, tmp.file("wrong.pgm"));
        CHECK(run_cli("evaluate --input " + tmp.file("labels.pgm").string() +
                      " --reference " + tmp.file("wrong.pgm").string() +
                      " --output-dir " + out) == 2);
    }
    SUBCASE("empty candidate pool is an algorithm error") {
        // Bands that no pixel of the phantom can satisfy for WM.
        CHECK(run_cli("optimize --input " + tmp.file("image.pgm").string() +
                      " --reference " + tmp.file("labels.pgm").string() +
                      " --bands 0,84,85,169,250,255 --output-dir " + out) == 3);
    }
}

TEST_CASE("segment on a noiseless phantom reproduces the ground truth") {
    TempDir tmp;
    Phantom phantom = generate({32, 32, {40, 120, 220}, 0.0,
                                PhantomGeometry::concentric, 2});
    save_pgm(phantom.image, tmp.file("image.pgm"));
    std::string out = (tmp.path / "out").string();
    // Correct-class seeds: WM core center, GM and CSF ring points.
    REQUIRE(run_cli("segment --input " + tmp.file("image.pgm").string() +
                    " --seeds \"2:16,9;3:16,16;1:16,3\" --output-dir " + out) == 0);
    LabelMap produced = load_label_pgm(tmp.path / "out" / "labels.pgm");
    CHECK(produced == phantom.labels);
}

TEST_CASE("phantom-gen writes image, labels and a provenance record") {
    TempDir tmp;
    std::string out = (tmp.path / "p").string();
    REQUIRE(run_cli("phantom-gen --width 32 --height 32 --noise-std 5 --rng-seed 4 "
                    "--output-dir " + out) == 0);
    CHECK(std::filesystem::exists(tmp.path / "p" / "image.pgm"));
    CHECK(std::filesystem::exists(tmp.path / "p" / "labels.pgm"));
    CHECK(slurp(tmp.path / "p" / "spec.txt").find("rng_seed=4") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.path / "p" / "config-echo.txt"));

    // Inputs must not be mutated by downstream commands.
    std::string before = slurp(tmp.path / "p" / "image.pgm");
    REQUIRE(run_cli("segment --input " + (tmp.path / "p" / "image.pgm").string() +
                    " --strategy histogram --output-dir " + (tmp.path / "s").string()) == 0);
    CHECK(slurp(tmp.path / "p" / "image.pgm") == before);
}

TEST_CASE("config echo replays to bit-identical outputs") {
    TempDir tmp;
    Phantom phantom = generate({32, 32, {40, 120, 220}, 8.0,
                                PhantomGeometry::concentric, 6});
    save_pgm(phantom.image, tmp.file("image.pgm"));
    save_label_pgm(phantom.labels, tmp.file("labels.pgm"));
    std::string a = (tmp.path / "a").string();
    std::string b = (tmp.path / "b").string();

    REQUIRE(run_cli("optimize --input " + tmp.file("image.pgm").string() +
                    " --reference " + tmp.file("labels.pgm").string() +
                    " --rng-seed 11 --output-dir " + a) == 0);
    REQUIRE(run_cli("--config " + (tmp.path / "a" / "config-echo.txt").string() +
                    " optimize --output-dir " + b) == 0);
    for (const char* name : {"labels.pgm", "history.csv", "eval.csv", "best-seeds.txt"}) {
        CHECK(slurp(tmp.path / "a" / name) == slurp(tmp.path / "b" / name));
    }
}
