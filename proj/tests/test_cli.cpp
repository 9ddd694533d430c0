#include "benford_kit/cli.hpp"
#include "benford_kit/dataset.hpp"
#include "benford_kit/density_spec.hpp"

#include "benford/conformance.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = benford_kit::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
class Scratch {
public:
    Scratch() {
        static int counter = 0;
        dir_ = fs::temp_directory_path() /
               ("benford_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
        return path(name);
    }

private:
    fs::path dir_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("density specs") {
    const auto spec = benford_kit::parse_density_spec("uniform:lo=1, hi=2");
    CHECK(spec.name == "uniform");
    REQUIRE(spec.params.size() == 2);
    CHECK(spec.params[1].first == "hi");
    CHECK(spec.params[1].second == "2");

    CHECK(benford_kit::parse_density("exponential:λ=2")->describe() ==
          benford_kit::parse_density("exponential:rate=2")->describe());
    CHECK(benford_kit::parse_density("benford-exact")->pdf(2.0) > 0.0);

    CHECK_THROWS_AS(benford_kit::parse_density("gamma:k=2"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("exponential"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("exponential:rate=1,rate=2"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("exponential:rate=1,λ=2"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("uniform:lo=1"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("uniform:lo"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("uniform:lo=1,hi=2x"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("benford-exact:x=1"), std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("tabulated:file=/no/such/file"),
                    std::invalid_argument);
    CHECK_THROWS_AS(benford_kit::parse_density("uniform:lo=2,hi=1"), std::domain_error);
}

TEST_CASE("dataset reading") {
    std::istringstream plain("1.5\n\n  2e3 \r\nabc\n-4\n");
    const auto v = benford_kit::read_dataset(plain, std::nullopt);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == 2000.0);
    CHECK(std::isnan(v[2]));
    CHECK(v[3] == -4.0);

    const std::string csv = "id,\"amount\"\n1,\"3.25\"\n2,\n3,x\n4,12\n";
    std::istringstream by_name(csv);
    const auto a = benford_kit::read_dataset(by_name, std::string("amount"));
    REQUIRE(a.size() == 4);
    CHECK(a[0] == 3.25);
    CHECK(std::isnan(a[1]));
    CHECK(std::isnan(a[2]));
    CHECK(a[3] == 12.0);

    std::istringstream by_index(csv);
    const auto b = benford_kit::read_dataset(by_index, std::string("1"));
    CHECK(b[0] == 3.25);
    CHECK(b[3] == 12.0);

    std::istringstream first_column(csv);
    CHECK(benford_kit::read_dataset(first_column, std::nullopt) ==
          std::vector<double>{1, 2, 3, 4});

    std::istringstream missing(csv);
    CHECK_THROWS_AS(benford_kit::read_dataset(missing, std::string("total")),
                    std::invalid_argument);
    std::istringstream out_of_range(csv);
    CHECK_THROWS_AS(benford_kit::read_dataset(out_of_range, std::string("5")),
                    std::invalid_argument);

    CHECK(benford_kit::split_csv("a,\"b,c\",\"d\"\"e\"") ==
          std::vector<std::string>{"a", "b,c", "d\"e"});
}

TEST_CASE("eval") {
    SUBCASE("benford-exact conforms with zero error") {
        const Result r = run({"eval", "benford-exact", "--format", "json"});
        CHECK(r.code == 0);
        const json doc = json::parse(r.out);
        REQUIRE(doc["patterns"].size() == 9);
        for (const auto& p : doc["patterns"]) {
            CHECK(std::abs(p["er"].get<double>()) <= 1e-9);
        }
        CHECK(doc["verdict"] == "CONFORMS");
    }

    SUBCASE("uniform on [1, 2) violates") {
        const Result r = run({"eval", "uniform:lo=1,hi=2", "--format", "json"});
        CHECK(r.code == 3);
        const json doc = json::parse(r.out);
        CHECK(doc["patterns"][0]["er"].get<double>() == doctest::Approx(0.699).epsilon(1e-3));
        CHECK(doc["verdict"] == "VIOLATES");
    }

    SUBCASE("exponential conforms at the default threshold") {
        const Result r = run({"eval", "exponential:λ=1", "--format", "json"});
        CHECK(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(doc["max_abs_er"].get<double>() <= 0.03);
        CHECK(doc["threshold"].get<double>() == 0.03);
        // Both spellings of the rate give the same report.
        CHECK(run({"eval", "exponential:rate=1", "--format", "json"}).out == r.out);
        CHECK(run({"eval", "exponential:rate=1", "--threshold", "0.01"}).code == 3);
    }

    SUBCASE("table and csv") {
        const Result table = run({"eval", "exponential:rate=1"});
        CHECK(table.code == 0);
        CHECK(table.out.find("CONFORMS") != std::string::npos);
        const Result csv = run({"eval", "exponential:rate=1", "--format", "csv"});
        CHECK(csv.out.rfind("pattern,probability,error_bound,benford,er\n", 0) == 0);
        CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);
    }

    SUBCASE("longer patterns and other bases") {
        const json two = json::parse(
            run({"eval", "benford-exact", "--digits", "2", "--format", "json"}).out);
        REQUIRE(two["patterns"].size() == 90);
        CHECK(two["patterns"][0]["pattern"] == "10");
        double sum = 0.0;
        for (const auto& p : two["patterns"]) {
            sum += p["probability"].get<double>();
            CHECK(std::abs(p["er"].get<double>()) <= 1e-9);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);

        const json hex =
            json::parse(run({"eval", "uniform:lo=1,hi=2", "--base", "16", "--format", "json"}).out);
        REQUIRE(hex["patterns"].size() == 15);
        CHECK(hex["patterns"][0]["probability"].get<double>() == 1.0);
        CHECK(hex["patterns"][0]["benford"].get<double>() == doctest::Approx(0.25));
    }

    SUBCASE("file-backed densities") {
        Scratch tmp;
        const std::string mix = tmp.write("mix.txt", "# weight rate\n0.5 1\n0.5 10\n");
        CHECK(run({"eval", "mixture:file=" + mix}).code == 0);
        const std::string tab = tmp.write("tab.csv", "1,0\n3,1\n5,0\n");
        const Result r = run({"eval", "tabulated:file=" + tab, "--format", "json"});
        CHECK(r.code == 3);
        const json doc = json::parse(r.out);
        double sum = 0.0;
        for (const auto& p : doc["patterns"]) {
            sum += p["probability"].get<double>();
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }

    SUBCASE("parse failures exit 2") {
        CHECK(run({"eval", "nonsense"}).code == 2);
        CHECK(run({"eval", "exponential:rate=-1"}).code == 2);
        CHECK(run({"eval", "exponential:rate=1", "--tol", "0"}).code == 2);
        CHECK(run({"eval", "exponential:rate=1", "--format", "xml"}).code == 2);
        CHECK(run({"eval", "exponential:rate=1", "--base", "1"}).code == 2);
        CHECK(run({"eval", "exponential:rate=1", "--digits", "9"}).code == 2);
        CHECK(run({"eval"}).code == 2);
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}

TEST_CASE("scan") {
    Scratch tmp;
    const Result r = run({"scan", "--out", tmp.path("a.csv")});
    CHECK(r.code == 0);
    CHECK(run({"scan", "--out", tmp.path("b.csv")}).code == 0);
    const std::string text = slurp(tmp.path("a.csv"));
    CHECK(text == slurp(tmp.path("b.csv")));
    CHECK(run({"scan"}).out == text);

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "d,lambda,er");
    int data = 0;
    int summary = 0;
    while (std::getline(lines, line)) {
        const auto fields = benford_kit::split_csv(line);
        REQUIRE(fields.size() == 3);
        if (fields[1] == "max_abs") {
            ++summary;
            CHECK(std::stod(fields[0]) == summary);
            CHECK(std::stod(fields[2]) <= 0.03);
        } else {
            ++data;
            CHECK(summary == 0);
            const int d = std::stoi(fields[0]);
            CHECK(std::stod(fields[2]) ==
                  benford::exponential_er_series(std::stod(fields[1]), d));
        }
    }
    CHECK(data == 9 * 256);
    CHECK(summary == 9);

    const json doc = json::parse(
        run({"scan", "--points-per-decade", "8", "--decades", "-2:1", "--format", "json"}).out);
    REQUIRE(doc["series"].size() == 9);
    CHECK(doc["series"][0]["points"].size() == 24);
    CHECK(doc["max_abs_er"].get<double>() <= 0.03);

    CHECK(run({"scan", "--threshold", "0.01"}).code == 3);
    CHECK(run({"scan", "--out", tmp.path("missing/dir/x.csv")}).code == 2);
    CHECK(run({"scan", "--decades", "1:1"}).code == 2);
    CHECK(run({"scan", "--decades", "a:b"}).code == 2);
}

TEST_CASE("generate") {
    Scratch tmp;
    SUBCASE("empty sample") {
        CHECK(run({"generate", "benford-exact", "-n", "0", "--out", tmp.path("z.txt")}).code == 0);
        CHECK(fs::exists(tmp.path("z.txt")));
        CHECK(fs::file_size(tmp.path("z.txt")) == 0);
    }

    SUBCASE("deterministic per seed, lossless text") {
        const auto a = run({"generate", "exponential:rate=3", "-n", "1000", "--seed", "9"});
        const auto b = run({"generate", "exponential:rate=3", "-n", "1000", "--seed", "9"});
        const auto c = run({"generate", "exponential:rate=3", "-n", "1000", "--seed", "10"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        const std::vector<double> library = benford::sample(benford::ExponentialDensity(3.0), 1000, 9);
        std::istringstream in(a.out);
        const auto parsed = benford_kit::read_dataset(in, std::nullopt);
        CHECK(parsed == library);
    }

    SUBCASE("unsupported sampler exits 2") {
        const Result r = run({"generate", "truncated-normal:mean=-10,sd=1", "-n", "5"});
        CHECK(r.code == 2);
        CHECK(r.err.find("sampler") != std::string::npos);
        CHECK(run({"generate", "benford-exact"}).code == 2);
        CHECK(run({"generate", "benford-exact", "-n", "5", "--out", tmp.path("no/x")}).code == 2);
    }

    SUBCASE("exponential sample agrees with exact probabilities") {
        const std::string file = tmp.path("exp.txt");
        const std::size_t n = 100000;
        REQUIRE(run({"generate", "exponential:rate=1", "-n", std::to_string(n), "--seed", "17",
                     "--out", file})
                    .code == 0);
        const json doc = json::parse(run({"analyze", file, "--format", "json"}).out);
        CHECK(doc["total"].get<std::size_t>() == n);
        const benford::ExponentialDensity e(1.0);
        for (int d = 1; d <= 9; ++d) {
            const double p = benford::exact_digit_prob(e, d).value;
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
            CHECK(std::abs(doc["patterns"][d - 1]["observed"].get<double>() - p) <= 4 * sigma);
        }
    }
}

TEST_CASE("analyze") {
    Scratch tmp;
    SUBCASE("logarithmic sample conforms") {
        const std::string file = tmp.path("b.txt");
        REQUIRE(run({"generate", "benford-exact", "-n", "100000", "--seed", "3", "--out", file})
                    .code == 0);
        const Result r = run({"analyze", file, "--format", "json"});
        CHECK(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(doc["chi_square"]["dof"] == 8);
        CHECK(doc["chi_square"]["critical_value"].get<double>() ==
              doctest::Approx(20.090235).epsilon(1e-6));
        CHECK(doc["chi_square"]["statistic"].get<double>() < 20.090235);
    }

    SUBCASE("integers 1..9999 violate") {
        std::string text;
        for (int i = 1; i <= 9999; ++i) {
            text += std::to_string(i) + "\n";
        }
        const std::string file = tmp.write("ints.txt", text);
        const Result r = run({"analyze", file, "--format", "json"});
        CHECK(r.code == 3);
        const json doc = json::parse(r.out);
        for (const auto& p : doc["patterns"]) {
            CHECK(p["count"] == 1111);
        }
        CHECK(run({"analyze", file}).out.find("VIOLATES") != std::string::npos);
    }

    SUBCASE("csv input with exclusions") {
        const std::string file =
            tmp.write("d.csv", "id,amount\n1,\"1,234\"\n2,5.5\n3,-2\n4,abc\n5,17\n6,0\n");
        const json doc =
            json::parse(run({"analyze", file, "--column", "amount", "--format", "json"}).out);
        CHECK(doc["total"] == 2);
        CHECK(doc["excluded"] == 4);
        CHECK(doc["patterns"][0]["count"] == 1);
        CHECK(doc["patterns"][4]["count"] == 1);
        const json by_index =
            json::parse(run({"analyze", file, "--column", "1", "--format", "json"}).out);
        CHECK(by_index["patterns"] == doc["patterns"]);
        CHECK(run({"analyze", file, "--column", "cost"}).code == 2);
    }

    SUBCASE("error paths") {
        const Result empty = run({"analyze", tmp.write("e.txt", "")});
        CHECK(empty.code == 4);
        CHECK_FALSE(empty.err.empty());
        CHECK(run({"analyze", tmp.write("neg.txt", "-1\n0\nnan\n")}).code == 4);
        CHECK(run({"analyze", tmp.path("absent.txt")}).code == 2);
        CHECK(run({"analyze", tmp.write("one.txt", "5\n"), "--alpha", "0.1"}).code == 2);
        CHECK(run({"analyze", tmp.write("two.txt", "5\n"), "--base", "10", "--digits", "7"}).code ==
              2);
    }

    SUBCASE("policy flags") {
        const std::string file = tmp.path("b.txt");
        REQUIRE(run({"generate", "benford-exact", "-n", "1000", "--seed", "1", "--out", file})
                    .code == 0);
        CHECK(run({"analyze", file, "--mad-threshold", "1e-9"}).code == 3);
        CHECK(run({"analyze", file, "--critical", "1e-9"}).code == 3);
        const json two =
            json::parse(run({"analyze", file, "--digits", "2", "--format", "json"}).out);
        CHECK(two["chi_square"]["dof"] == 89);
        const Result csv = run({"analyze", file, "--format", "csv"});
        CHECK(csv.out.rfind("pattern,count,observed,expected\n", 0) == 0);
    }
}

TEST_CASE("process exit codes") {
    Scratch tmp;
    const std::string exe = BENFORD_KIT_EXE;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " > " + tmp.path("o") + " 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("eval benford-exact") == 0);
    CHECK(status("eval uniform:lo=1,hi=2") == 3);
    CHECK(status("eval bogus") == 2);
    CHECK(status("analyze " + tmp.write("e.txt", "")) == 4);
    CHECK(status("generate benford-exact -n 10 --seed 4") == 0);
}
