// segseed — seeded region growing with GA-optimized seed points.
//
// Subcommands: segment, optimize, evaluate, compare, phantom-gen.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 algorithm error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segseed/ga.hpp"
#include "segseed/image.hpp"
#include "segseed/metrics.hpp"
#include "segseed/pgm.hpp"
#include "segseed/phantom.hpp"
#include "segseed/region_grow.hpp"
#include "segseed/seeding.hpp"

namespace fs = std::filesystem;
using namespace segseed;

namespace {

bool log_enabled() {
    const char* env = std::getenv("SEGSEED_LOG");
    return env != nullptr && *env != '\0';
}

void log_line(const std::string& message) {
    if (log_enabled()) std::cerr << "[segseed] " << message << "\n";
}

// Thrown for malformed flag values; maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "c:x,y;c:x,y;c:x,y" with class codes 1..3.
std::vector<ClassSeed> parse_seeds(const std::string& text) {
    std::vector<ClassSeed> seeds;
    std::stringstream stream(text);
    std::string entry;
    while (std::getline(stream, entry, ';')) {
        if (entry.empty()) continue;
        int cls = 0, x = 0, y = 0;
        char colon = 0, comma = 0;
        std::istringstream in(entry);
        if (!(in >> cls >> colon >> x >> comma >> y) || colon != ':' || comma != ',') {
            throw UsageError("bad seed entry \"" + entry + "\", expected c:x,y");
        }
        if (cls < 1 || cls > 3) {
            throw UsageError("seed class must be 1 (CSF), 2 (GM) or 3 (WM), got " +
                             std::to_string(cls));
        }
        seeds.push_back({static_cast<std::uint8_t>(cls), {x, y}});
    }
    if (seeds.size() != 3) {
        throw UsageError("--seeds needs exactly 3 entries, got " +
                         std::to_string(seeds.size()));
    }
    return seeds;
}

struct CriterionOpts {
    double k = 2.5;
    double sigma_floor = 5.0;
    std::string stats_mode = "exact";
    std::string neighborhood = "8";

    GrowthCriterion criterion() const {
        return {k, sigma_floor, stats_mode_from_string(stats_mode)};
    }
    Neighborhood nbhd() const { return neighborhood_from_string(neighborhood); }
};

void add_criterion_opts(CLI::App* cmd, CriterionOpts& opts) {
    cmd->add_option("--k", opts.k, "Std multiplier of the acceptance predicate")->capture_default_str();
    cmd->add_option("--sigma-floor", opts.sigma_floor, "Minimum effective std")->capture_default_str();
    cmd->add_option("--stats-mode", opts.stats_mode, "exact | paper-literal")->capture_default_str();
    cmd->add_option("--neighborhood", opts.neighborhood, "4 | diag4 | 8")->capture_default_str();
}

struct GaOpts {
    std::string config_file;
    bool rng_seed_set = false;
    std::uint64_t rng_seed = 0;

    GAConfig resolve() const {
        GAConfig config = config_file.empty() ? GAConfig{} : load_ga_config(config_file);
        if (rng_seed_set) config.rng_seed = rng_seed;
        config.validate();
        return config;
    }
};

void add_ga_opts(CLI::App* cmd, GaOpts& opts) {
    cmd->add_option("--ga-config", opts.config_file, "key=value GA parameter file")->capture_default_str();
    cmd->add_option("--rng-seed", opts.rng_seed, "Overrides the GA rng_seed")->capture_default_str()
        ->each([&opts](const std::string&) { opts.rng_seed_set = true; });
}

fs::path prepare_output_dir(const std::string& dir) {
    fs::path path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw DataError(dir + ": cannot create output directory");
    return path;
}

// Reproducibility record: re-running with `segseed --config <echo>`
// regenerates bit-identical outputs.
void write_config_echo(const CLI::App& cmd, const fs::path& out_dir) {
    std::ofstream out(out_dir / "config-echo.txt");
    out << "[" << cmd.get_name() << "]\n" << cmd.config_to_str(true, false);
}

std::vector<ClassSeed> in_growth_order(std::vector<ClassSeed> seeds) {
    std::vector<ClassSeed> ordered;
    for (std::uint8_t cls : kDefaultGrowthOrder) {
        for (const ClassSeed& s : seeds) {
            if (s.cls == cls) ordered.push_back(s);
        }
    }
    return ordered;
}

std::string seeds_to_string(const std::vector<ClassSeed>& seeds) {
    std::ostringstream out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out << ";";
        out << static_cast<int>(seeds[i].cls) << ":" << seeds[i].point.x << ","
            << seeds[i].point.y;
    }
    return out.str();
}

void write_history_csv(const std::vector<GenerationRecord>& history, const fs::path& path) {
    std::ofstream out(path);
    out << "generation,best_cost,mean_cost\n";
    out << std::setprecision(10);
    for (const GenerationRecord& rec : history) {
        out << rec.generation << "," << rec.best_cost << "," << rec.mean_cost << "\n";
    }
}

void write_eval_csv(const EvalReport& report, const fs::path& path) {
    std::ofstream out(path);
    out << eval_csv_header() << "\n" << to_csv_row(report) << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Seeded region growing segmentation with GA seed optimization"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Replay an echoed run configuration");

    std::string input, reference, output_dir = ".", seeds_text, bands_text, strategy;
    std::uint64_t rng_seed = 0;
    CriterionOpts crit;
    GaOpts ga;
    bool executed = false;

    // --- segment ---------------------------------------------------------
    auto* segment_cmd = app.add_subcommand("segment", "Grow regions from seed points");
    segment_cmd->configurable(true);
    segment_cmd->add_option("--input", input, "Input image (PGM)")->required()->capture_default_str();
    segment_cmd->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
    segment_cmd->add_option("--seeds", seeds_text, "Manual seeds: c:x,y;c:x,y;c:x,y");
    segment_cmd->add_option("--strategy", strategy, "manual | random | histogram")->capture_default_str()
        ->default_val("manual");
    segment_cmd->add_option("--bands", bands_text, "CSF,GM,WM bands: lo,hi,lo,hi,lo,hi")->capture_default_str();
    segment_cmd->add_option("--rng-seed", rng_seed, "RNG seed for --strategy random")->capture_default_str();
    add_criterion_opts(segment_cmd, crit);
    segment_cmd->callback([&] {
        if (executed) return;
        executed = true;
        Image2D image = load_pgm(input);
        std::vector<ClassSeed> seeds;
        if (strategy == "manual") {
            if (seeds_text.empty()) throw UsageError("--strategy manual needs --seeds");
            seeds = parse_seeds(seeds_text);
        } else if (strategy == "random") {
            ThresholdBands bands = bands_text.empty() ? ThresholdBands{}
                                                      : ThresholdBands::parse(bands_text);
            seeds = in_growth_order(random_seeds(pool_from_thresholds(image, bands), rng_seed));
        } else if (strategy == "histogram") {
            seeds = in_growth_order(histogram_peak_seeds(image));
        } else {
            throw UsageError("unknown strategy \"" + strategy + "\"");
        }
        for (const ClassSeed& s : seeds) {
            if (!image.in_bounds(s.point)) {
                throw DataError("seed (" + std::to_string(s.point.x) + "," +
                                std::to_string(s.point.y) + ") outside " +
                                std::to_string(image.width()) + "x" +
                                std::to_string(image.height()) + " image");
            }
        }
        log_line("segmenting with seeds " + seeds_to_string(seeds));
        LabelMap labels = segment(image, seeds, crit.criterion(), crit.nbhd());

        fs::path out = prepare_output_dir(output_dir);
        save_label_pgm(labels, out / "labels.pgm");
        std::array<std::size_t, 4> counts{};
        for (std::uint8_t code : labels.labels()) ++counts[code];
        std::ofstream report(out / "run-report.txt");
        report << "input=" << input << "\n"
               << "seeds=" << seeds_to_string(seeds) << "\n"
               << "k=" << crit.k << "\nsigma_floor=" << crit.sigma_floor << "\n"
               << "stats_mode=" << crit.stats_mode << "\n"
               << "neighborhood=" << crit.neighborhood << "\n"
               << "pixels_background=" << counts[0] << "\n"
               << "pixels_csf=" << counts[1] << "\n"
               << "pixels_gm=" << counts[2] << "\n"
               << "pixels_wm=" << counts[3] << "\n";
        write_config_echo(*segment_cmd, out);
    });

    // --- optimize --------------------------------------------------------
    auto* optimize_cmd =
        app.add_subcommand("optimize", "GA search for seed points, then segment");
    optimize_cmd->configurable(true);
    optimize_cmd->add_option("--input", input, "Input image (PGM)")->required()->capture_default_str();
    optimize_cmd->add_option("--reference", reference, "Reference label map (PGM)")->capture_default_str()
        ->required();
    optimize_cmd->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
    optimize_cmd->add_option("--bands", bands_text, "Candidate-pool bands")->capture_default_str();
    add_criterion_opts(optimize_cmd, crit);
    add_ga_opts(optimize_cmd, ga);
    optimize_cmd->callback([&] {
        if (executed) return;
        executed = true;
        Image2D image = load_pgm(input);
        LabelMap ref = load_label_pgm(reference);
        ThresholdBands bands =
            bands_text.empty() ? ThresholdBands{} : ThresholdBands::parse(bands_text);
        CandidatePool pool = pool_from_thresholds(image, bands);
        GAConfig config = ga.resolve();

        log_line("evolving: population " + std::to_string(config.population_size) +
                 ", up to " + std::to_string(config.max_generations) + " generations");
        EvolveResult evolved =
            evolve(image, pool, ref, crit.criterion(), crit.nbhd(), config);
        log_line("best cost " + std::to_string(evolved.best_cost) + " after " +
                 std::to_string(evolved.history.size()) + " generations");
        LabelMap labels = segment(image, evolved.best_seeds, crit.criterion(), crit.nbhd());

        fs::path out = prepare_output_dir(output_dir);
        save_label_pgm(labels, out / "labels.pgm");
        std::ofstream best(out / "best-seeds.txt");
        best << seeds_to_string(evolved.best_seeds) << "\n"
             << "cost=" << std::setprecision(10) << evolved.best_cost << "\n";
        write_history_csv(evolved.history, out / "history.csv");
        write_eval_csv(rms_error(labels, ref), out / "eval.csv");
        write_config_echo(*optimize_cmd, out);
    });

    // --- evaluate --------------------------------------------------------
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Compare a label map against a reference");
    evaluate_cmd->configurable(true);
    evaluate_cmd->add_option("--input", input, "Produced label map (PGM)")->required()->capture_default_str();
    evaluate_cmd->add_option("--reference", reference, "Reference label map (PGM)")->capture_default_str()
        ->required();
    evaluate_cmd->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
    evaluate_cmd->callback([&] {
        if (executed) return;
        executed = true;
        LabelMap produced = load_label_pgm(input);
        LabelMap ref = load_label_pgm(reference);
        EvalReport report = rms_error(produced, ref);
        fs::path out = prepare_output_dir(output_dir);
        write_eval_csv(report, out / "eval.csv");
        write_config_echo(*evaluate_cmd, out);
        std::cout << to_text(report);
    });

    // --- compare ---------------------------------------------------------
    auto* compare_cmd = app.add_subcommand(
        "compare", "Manual-seeded vs GA-optimized segmentation of the same image");
    compare_cmd->configurable(true);
    compare_cmd->add_option("--input", input, "Input image (PGM)")->required()->capture_default_str();
    compare_cmd->add_option("--reference", reference, "Reference label map (PGM)")->capture_default_str()
        ->required();
    compare_cmd->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
    compare_cmd->add_option("--seeds", seeds_text, "Manual seeds: c:x,y;c:x,y;c:x,y")
        ->required();
    compare_cmd->add_option("--bands", bands_text, "Candidate-pool bands for the GA")->capture_default_str();
    add_criterion_opts(compare_cmd, crit);
    add_ga_opts(compare_cmd, ga);
    compare_cmd->callback([&] {
        if (executed) return;
        executed = true;
        Image2D image = load_pgm(input);
        LabelMap ref = load_label_pgm(reference);
        std::vector<ClassSeed> manual = parse_seeds(seeds_text);
        GrowthCriterion criterion = crit.criterion();
        Neighborhood nbhd = crit.nbhd();

        LabelMap manual_labels = segment(image, manual, criterion, nbhd);
        EvalReport manual_eval = rms_error(manual_labels, ref);

        ThresholdBands bands =
            bands_text.empty() ? ThresholdBands{} : ThresholdBands::parse(bands_text);
        CandidatePool pool = pool_from_thresholds(image, bands);
        EvolveResult evolved = evolve(image, pool, ref, criterion, nbhd, ga.resolve());
        LabelMap ga_labels = segment(image, evolved.best_seeds, criterion, nbhd);
        EvalReport ga_eval = rms_error(ga_labels, ref);

        fs::path out = prepare_output_dir(output_dir);
        save_label_pgm(manual_labels, out / "manual-labels.pgm");
        save_label_pgm(ga_labels, out / "ga-labels.pgm");
        write_history_csv(evolved.history, out / "history.csv");
        std::ofstream csv(out / "compare.csv");
        csv << "method,rms\n" << std::setprecision(10)
            << "manual," << manual_eval.rms_overall << "\n"
            << "ga," << ga_eval.rms_overall << "\n";
        write_config_echo(*compare_cmd, out);
        std::cout << "manual rms " << manual_eval.rms_overall << ", ga rms "
                  << ga_eval.rms_overall << "\n";
    });

    // --- phantom-gen -----------------------------------------------------
    PhantomSpec spec;
    std::string geometry = "concentric";
    std::vector<int> means = {40, 120, 220};
    auto* phantom_cmd =
        app.add_subcommand("phantom-gen", "Generate a synthetic phantom + ground truth");
    phantom_cmd->configurable(true);
    phantom_cmd->add_option("--width", spec.width, "Phantom width")->capture_default_str();
    phantom_cmd->add_option("--height", spec.height, "Phantom height")->capture_default_str();
    phantom_cmd->add_option("--means", means, "Class means: CSF GM WM")->expected(3)->capture_default_str();
    phantom_cmd->add_option("--noise-std", spec.noise_std, "Gaussian noise sigma")->capture_default_str();
    phantom_cmd->add_option("--geometry", geometry, "concentric | blobs")->capture_default_str();
    phantom_cmd->add_option("--rng-seed", spec.rng_seed, "Phantom RNG seed")->capture_default_str();
    phantom_cmd->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
    phantom_cmd->callback([&] {
        if (executed) return;
        executed = true;
        for (int i = 0; i < 3; ++i) {
            if (means[i] < 0 || means[i] > 255) {
                throw UsageError("class mean " + std::to_string(means[i]) +
                                 " outside [0,255]");
            }
            spec.class_means[i] = static_cast<std::uint8_t>(means[i]);
        }
        spec.geometry = geometry_from_string(geometry);
        Phantom phantom = generate(spec);
        fs::path out = prepare_output_dir(output_dir);
        save_pgm(phantom.image, out / "image.pgm");
        save_label_pgm(phantom.labels, out / "labels.pgm");
        std::ofstream provenance(out / "spec.txt");
        provenance << "width=" << spec.width << "\nheight=" << spec.height
                   << "\nmeans=" << means[0] << "," << means[1] << "," << means[2]
                   << "\nnoise_std=" << spec.noise_std
                   << "\ngeometry=" << to_string(spec.geometry)
                   << "\nrng_seed=" << spec.rng_seed << "\n";
        write_config_echo(*phantom_cmd, out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.category() == Error::Category::data ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
