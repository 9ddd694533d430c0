#include "benford_kit/cli.hpp"

#include "benford_kit/dataset.hpp"
#include "benford_kit/density_spec.hpp"

#include "benford/conformance.hpp"
#include "benford/empirical.hpp"
#include "benford/errors.hpp"
#include "benford/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace benford_kit {

namespace {

using json = nlohmann::ordered_json;

// Bad paths: exit 2.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxPatterns = 100000;

// --out PATH when given, otherwise the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw io_error("cannot write " + path_);
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

    void finish() {
        stream().flush();
        if (!stream()) {
            throw io_error("write failed" + (path_.empty() ? std::string{} : ": " + path_));
        }
    }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream& fallback_;
};

std::string num(double x) { return benford::format_shortest(x); }

std::string fixed(double x, int precision) {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
}

std::size_t pattern_space(int base, int digits) {
    const long double n = (base - 1) * benford::detail::int_pow(base, digits - 1);
    if (n > static_cast<long double>(kMaxPatterns)) {
        throw std::domain_error("base " + std::to_string(base) + " with " +
                                std::to_string(digits) + " digits gives more than " +
                                std::to_string(kMaxPatterns) + " patterns");
    }
    return static_cast<std::size_t>(n);
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
    std::string spec;
    int base = 10;
    int digits = 1;
    double tol = benford::kDefaultTolerance;
    double threshold = benford::kDefaultThreshold;
    std::string format = "table";
    std::string out;
};

struct PatternRow {
    benford::DigitPattern pattern;
    benford::Estimate probability;
    double law = 0.0;
    double er = 0.0;
};

std::vector<PatternRow> pattern_rows(const benford::Density& f, int base, int digits, double tol) {
    const std::size_t count = pattern_space(base, digits);
    const benford::DigitCounts layout{base, digits, {}, 0, 0};
    const auto scale = static_cast<double>(benford::detail::int_pow(base, digits - 1));
    std::vector<PatternRow> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        benford::DigitPattern p = layout.pattern(i);
        const double law = benford::benford_pattern_prob(p);
        rows.push_back({std::move(p), {}, law, 0.0});
    }
    benford::parallel_for(count, [&](std::size_t i) {
        const double a = rows[i].pattern.lower_bound();
        const benford::SignificandInterval s(base, a / scale, (a + 1.0) / scale);
        rows[i].probability = benford::exact_interval_prob(f, s, tol);
        rows[i].er = rows[i].probability.value - rows[i].law;
    });
    return rows;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    const auto density = parse_density(o.spec);
    const std::vector<PatternRow> rows = pattern_rows(*density, o.base, o.digits, o.tol);
    double max_abs = 0.0;
    double max_bound = 0.0;
    for (const PatternRow& r : rows) {
        max_abs = std::max(max_abs, std::abs(r.er));
        max_bound = std::max(max_bound, r.probability.error_bound);
    }
    const auto verdict =
        max_abs <= o.threshold ? benford::Verdict::conforms : benford::Verdict::violates;

    Sink sink(o.out, out);
    std::ostream& s = sink.stream();
    if (o.format == "json") {
        json doc;
        doc["command"] = "eval";
        doc["density"] = density->describe();
        doc["base"] = o.base;
        doc["digits"] = o.digits;
        doc["tolerance"] = o.tol;
        doc["threshold"] = o.threshold;
        json patterns = json::array();
        for (const PatternRow& r : rows) {
            patterns.push_back({{"pattern", r.pattern.to_string()},
                                {"probability", r.probability.value},
                                {"error_bound", r.probability.error_bound},
                                {"benford", r.law},
                                {"er", r.er}});
        }
        doc["patterns"] = std::move(patterns);
        doc["max_abs_er"] = max_abs;
        doc["max_error_bound"] = max_bound;
        doc["verdict"] = benford::to_string(verdict);
        s << doc.dump(2) << '\n';
    } else if (o.format == "csv") {
        s << "pattern,probability,error_bound,benford,er\n";
        for (const PatternRow& r : rows) {
            s << r.pattern.to_string() << ',' << num(r.probability.value) << ','
              << num(r.probability.error_bound) << ',' << num(r.law) << ',' << num(r.er) << '\n';
        }
    } else {
        s << "density    " << density->describe() << '\n'
          << "base " << o.base << ", digits " << o.digits << ", tolerance " << num(o.tol)
          << "\n\n";
        s << std::left << std::setw(10) << "pattern" << std::right << std::setw(20)
          << "probability" << std::setw(12) << "bound" << std::setw(20) << "benford"
          << std::setw(20) << "er" << '\n';
        for (const PatternRow& r : rows) {
            s << std::left << std::setw(10) << r.pattern.to_string() << std::right
              << std::setw(20) << fixed(r.probability.value, 14) << std::setw(12)
              << fixed(r.probability.error_bound, 3) << std::setw(20) << fixed(r.law, 14)
              << std::setw(20) << fixed(r.er, 10) << '\n';
        }
        s << "\nmax |er|   " << fixed(max_abs, 10) << "  (threshold " << num(o.threshold)
          << ")\nverdict    " << benford::to_string(verdict) << '\n';
    }
    sink.finish();
    return verdict == benford::Verdict::conforms ? kConforms : kViolates;
}

// ---------------------------------------------------------------- scan

struct ScanOptions {
    int points_per_decade = 256;
    std::string decades = "0:1";
    double tol = benford::kSeriesTolerance;
    double threshold = benford::kDefaultThreshold;
    std::string format = "csv";
    std::string out;
};

std::pair<int, int> parse_decades(const std::string& text) {
    const auto colon = text.find(':');
    int lo = 0;
    int hi = 0;
    auto whole = [](std::string_view s, int& v) {
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return !s.empty() && ec == std::errc{} && end == s.data() + s.size();
    };
    if (colon == std::string::npos || !whole(std::string_view(text).substr(0, colon), lo) ||
        !whole(std::string_view(text).substr(colon + 1), hi) || hi <= lo) {
        throw std::invalid_argument("--decades expects LO:HI with integers LO < HI, got '" +
                                    text + "'");
    }
    return {lo, hi};
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
    const auto [lo, hi] = parse_decades(o.decades);
    const std::vector<double> rates = benford::log_spaced_grid(o.points_per_decade, lo, hi);
    std::vector<benford::ScanResult> scans;
    double max_abs = 0.0;
    for (int d = 1; d <= 9; ++d) {
        scans.push_back(benford::er_scan(d, rates, o.tol));
        max_abs = std::max(max_abs, scans.back().max_abs);
    }
    const auto verdict =
        max_abs <= o.threshold ? benford::Verdict::conforms : benford::Verdict::violates;

    Sink sink(o.out, out);
    std::ostream& s = sink.stream();
    if (o.format == "json") {
        json doc;
        doc["command"] = "scan";
        doc["points_per_decade"] = o.points_per_decade;
        doc["decades"] = {lo, hi};
        doc["tolerance"] = o.tol;
        doc["threshold"] = o.threshold;
        json series = json::array();
        for (const benford::ScanResult& r : scans) {
            json points = json::array();
            for (const benford::ScanPoint& p : r.points) {
                points.push_back({{"lambda", p.rate}, {"er", p.er}});
            }
            series.push_back({{"digit", r.digit}, {"max_abs", r.max_abs}, {"points", points}});
        }
        doc["series"] = std::move(series);
        doc["max_abs_er"] = max_abs;
        doc["verdict"] = benford::to_string(verdict);
        s << doc.dump(2) << '\n';
    } else {
        std::string text = "d,lambda,er\n";
        for (const benford::ScanResult& r : scans) {
            for (const benford::ScanPoint& p : r.points) {
                text += std::to_string(r.digit) + ',' + num(p.rate) + ',' + num(p.er) + '\n';
            }
        }
        for (const benford::ScanResult& r : scans) {
            text += std::to_string(r.digit) + ",max_abs," + num(r.max_abs) + '\n';
        }
        s << text;
    }
    sink.finish();
    return verdict == benford::Verdict::conforms ? kConforms : kViolates;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string input;
    int base = 10;
    int digits = 1;
    std::optional<std::string> column;
    double alpha = 0.01;
    std::optional<double> critical;
    std::optional<double> mad_threshold;
    std::string format = "table";
    std::string out;
};

std::vector<double> load_values(const AnalyzeOptions& o) {
    if (o.input == "-") {
        return read_dataset(std::cin, o.column);
    }
    std::ifstream in(o.input, std::ios::binary);
    if (!in) {
        throw io_error("cannot read " + o.input);
    }
    std::vector<double> values = read_dataset(in, o.column);
    if (in.bad()) {
        throw io_error("read failed: " + o.input);
    }
    return values;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    pattern_space(o.base, o.digits);
    const std::vector<double> values = load_values(o);
    benford::AnalysisPolicy policy;
    policy.alpha = o.alpha;
    policy.critical_value = o.critical;
    policy.mad_threshold = o.mad_threshold;
    const benford::ConformanceReport r = benford::analyze_dataset(values, o.base, o.digits, policy);
    const benford::DigitCounts& c = r.counts;

    Sink sink(o.out, out);
    std::ostream& s = sink.stream();
    if (o.format == "json") {
        json doc;
        doc["command"] = "analyze";
        doc["input"] = o.input;
        doc["base"] = o.base;
        doc["digits"] = o.digits;
        doc["total"] = c.total;
        doc["excluded"] = c.excluded;
        json patterns = json::array();
        for (std::size_t i = 0; i < c.pattern_count(); ++i) {
            patterns.push_back({{"pattern", c.pattern(i).to_string()},
                                {"count", c.counts[i]},
                                {"observed", r.observed[i]},
                                {"expected", r.expected[i]}});
        }
        doc["patterns"] = std::move(patterns);
        doc["chi_square"] = {{"statistic", r.chi_square.statistic},
                             {"dof", r.chi_square.dof},
                             {"alpha", r.alpha},
                             {"critical_value", r.critical_value}};
        doc["mad"] = r.mad;
        if (o.mad_threshold) {
            doc["mad_threshold"] = *o.mad_threshold;
        }
        doc["verdict"] = benford::to_string(r.verdict);
        s << doc.dump(2) << '\n';
    } else if (o.format == "csv") {
        s << "pattern,count,observed,expected\n";
        for (std::size_t i = 0; i < c.pattern_count(); ++i) {
            s << c.pattern(i).to_string() << ',' << c.counts[i] << ',' << num(r.observed[i])
              << ',' << num(r.expected[i]) << '\n';
        }
    } else {
        s << "input      " << o.input << '\n'
          << "values     " << c.total << " classified, " << c.excluded << " excluded\n\n";
        s << std::left << std::setw(10) << "pattern" << std::right << std::setw(12) << "count"
          << std::setw(14) << "observed" << std::setw(14) << "expected" << '\n';
        for (std::size_t i = 0; i < c.pattern_count(); ++i) {
            s << std::left << std::setw(10) << c.pattern(i).to_string() << std::right
              << std::setw(12) << c.counts[i] << std::setw(14) << fixed(r.observed[i], 6)
              << std::setw(14) << fixed(r.expected[i], 6) << '\n';
        }
        s << "\nchi-square " << fixed(r.chi_square.statistic, 8) << "  (dof " << r.chi_square.dof
          << ", critical " << fixed(r.critical_value, 8) << " at alpha " << num(r.alpha)
          << ")\nMAD        " << fixed(r.mad, 6);
        if (o.mad_threshold) {
            s << "  (threshold " << num(*o.mad_threshold) << ')';
        }
        s << "\nverdict    " << benford::to_string(r.verdict) << '\n';
    }
    sink.finish();
    return r.verdict == benford::Verdict::conforms ? kConforms : kViolates;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
    std::string spec;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
    const auto density = parse_density(o.spec);
    if (!density->has_sampler()) {
        throw benford::unsupported_operation(density->describe() + " has no sampler");
    }
    const std::vector<double> draws = benford::sample(*density, o.count, o.seed);
    std::string text;
    text.reserve(draws.size() * 24);
    for (double x : draws) {
        text += num(x);
        text += '\n';
    }
    Sink sink(o.out, out);
    sink.stream() << text;
    sink.finish();
    return kConforms;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Leading-digit distributions of densities and datasets", "benford_kit"};
    app.require_subcommand(1);
    const auto formats = CLI::IsMember({"table", "json", "csv"});
    const auto base_range = CLI::Range(2, 1 << 20);
    const auto digit_range = CLI::Range(1, 20);

    EvalOptions eval;
    auto* e = app.add_subcommand("eval", "Exact digit distribution and Er of a density");
    e->add_option("density", eval.spec, "Density spec, e.g. exponential:rate=1")->required();
    e->add_option("--base", eval.base, "Numeral base")->check(base_range);
    e->add_option("--digits", eval.digits, "Leading-digit pattern length")->check(digit_range);
    e->add_option("--tol", eval.tol, "Error bound per probability")
        ->check(CLI::PositiveNumber);
    e->add_option("--threshold", eval.threshold, "Largest |er| that still conforms")
        ->check(CLI::NonNegativeNumber);
    e->add_option("--format", eval.format, "table, json or csv")->check(formats);
    e->add_option("--out", eval.out, "Write the report here");

    ScanOptions scan;
    auto* sc = app.add_subcommand("scan", "Er of Exp(lambda) over a log-spaced lambda grid");
    sc->add_option("--points-per-decade", scan.points_per_decade, "Grid points per decade")
        ->check(CLI::Range(1, 1 << 20));
    sc->add_option("--decades", scan.decades, "Decade range LO:HI, lambda in [10^LO, 10^HI)");
    sc->add_option("--tol", scan.tol, "Series truncation bound")->check(CLI::PositiveNumber);
    sc->add_option("--threshold", scan.threshold, "Largest |er| that still conforms")
        ->check(CLI::NonNegativeNumber);
    sc->add_option("--format", scan.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", scan.out, "Write the CSV here");

    AnalyzeOptions analyze;
    auto* an = app.add_subcommand("analyze", "Digit test of a dataset against the logarithmic law");
    an->add_option("input", analyze.input, "Numbers, one per line, or CSV; - for stdin")
        ->required();
    an->add_option("--base", analyze.base, "Numeral base")->check(base_range);
    an->add_option("--digits", analyze.digits, "Leading-digit pattern length")
        ->check(digit_range);
    an->add_option("--column", analyze.column, "CSV column by header name or 0-based index");
    an->add_option("--alpha", analyze.alpha, "Chi-square significance level")
        ->check(CLI::IsMember({0.05, 0.01}));
    an->add_option("--critical", analyze.critical, "Chi-square critical value override")
        ->check(CLI::PositiveNumber);
    an->add_option("--mad-threshold", analyze.mad_threshold, "Also fail when MAD exceeds this")
        ->check(CLI::NonNegativeNumber);
    an->add_option("--format", analyze.format, "table, json or csv")->check(formats);
    an->add_option("--out", analyze.out, "Write the report here");

    GenerateOptions generate;
    auto* g = app.add_subcommand("generate", "Draw samples from a density");
    g->add_option("density", generate.spec, "Density spec")->required();
    g->add_option("-n,--count", generate.count, "Number of samples")->required();
    g->add_option("--seed", generate.seed, "Random seed");
    g->add_option("--out", generate.out, "Write the samples here");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& ex) {
        return app.exit(ex, out, err) == 0 ? kConforms : kUsage;
    }

    try {
        if (e->parsed()) {
            return cmd_eval(eval, out);
        }
        if (sc->parsed()) {
            return cmd_scan(scan, out);
        }
        if (an->parsed()) {
            return cmd_analyze(analyze, out);
        }
        return cmd_generate(generate, out);
    } catch (const benford::tolerance_not_met& ex) {
        err << "error: " << ex.what() << " (achieved error bound " << num(ex.achieved()) << ")\n";
        return kNumeric;
    } catch (const benford::empty_dataset& ex) {
        err << "error: " << ex.what() << '\n';
        return kNumeric;
    } catch (const benford::unsupported_operation& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const io_error& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << '\n';
        return kInternal;
    }
}

} // namespace benford_kit
