// SPDX-License-Identifier: Apache-2.0
//
// cvbell figure <id> | point | verify
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cvbell/app.hpp"
#include "cvbell/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct Flags {
    cvbell::app::RunConfig config;
    std::string grid;
    std::string out;
    std::string format;
    std::string figure;
};

void add_physics(CLI::App& cmd, Flags& f) {
    auto& c = f.config;
    cmd.add_option("--state", c.state, "vlb | t | twb | conditional");
    cmd.add_option("--test", c.test, "dp2 | dp3 | ps2 | ps3 | homodyne");
    cmd.add_option("--r", c.r, "squeezing parameter");
    cmd.add_option("--n", c.n, "total mean photon number");
    cmd.add_option("--n2", c.n2, "mean photons in mode 2");
    cmd.add_option("--n3", c.n3, "mean photons in mode 3");
    cmd.add_option("--phi2", c.phi2, "phase of mode 2");
    cmd.add_option("--phi3", c.phi3, "phase of mode 3");
    cmd.add_option("--eta", c.eta, "detector efficiency");
    cmd.add_option("--j", c.j, "displacement magnitude J");
    cmd.add_flag("--optimize", c.optimize, "optimise J (or the homodyne angles)");
    cmd.add_option("--grid", f.grid, "sweep lo:hi:steps");
    cmd.add_option("--cutoff", c.cutoff, "Fock cutoff per mode")->check(CLI::PositiveNumber);
    cmd.add_option("--tol", c.tol, "series tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--out", f.out, "output file (default stdout)");
    cmd.add_option("--format", f.format, "csv | json (verify also: text)");
}

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The file is opened before any computation so a bad path fails fast.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw IoFailure("cannot open " + path + " for writing");
    }

    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

    void close() {
        stream().flush();
        if (file_.is_open()) file_.close();
        if (file_.fail() || !std::cout) throw IoFailure("failed writing " + (path_.empty() ? "stdout" : path_));
    }

private:
    std::string path_;
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-inequality tests for continuous-variable states"};
    app.require_subcommand(1);
    Flags f;

    auto* figure = app.add_subcommand("figure", "regenerate a figure table");
    figure->add_option("id", f.figure, "figure id")->required();
    add_physics(*figure, f);

    auto* point = app.add_subcommand("point", "evaluate one configuration, print one JSON record");
    add_physics(*point, f);

    auto* verify = app.add_subcommand("verify", "oracle-equivalence and invariant checks");
    add_physics(*verify, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    using namespace cvbell::app;
    try {
        if (!f.grid.empty()) f.config.grid = parse_grid(f.grid);
        std::string format = f.format;
        if (*figure) {
            if (format.empty()) format = "csv";
            if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
        } else if (*point) {
            if (format.empty()) format = "json";
            if (format != "json") throw UsageError("point writes JSON only");
        } else {
            if (format.empty()) format = "text";
            if (format != "text" && format != "csv" && format != "json")
                throw UsageError("--format must be text, csv or json");
        }
        Output out(f.out);
        int status = kOk;
        if (*figure) {
            write_table(run_figure(f.figure, f.config), format, out.stream());
        } else if (*point) {
            write_record(run_point(f.config), out.stream());
        } else {
            const VerifyReport report = run_verify(f.config);
            write_report(report, format, out.stream());
            if (!report.passed()) status = kVerifyFailed;
        }
        out.close();
        return status;
    } catch (const IoFailure& e) {
        std::cerr << "cvbell: " << e.what() << '\n';
        return kIo;
    } catch (const UsageError& e) {
        std::cerr << "cvbell: " << e.what() << '\n';
        return kUsage;
    } catch (const cvbell::InvalidParameter& e) {
        std::cerr << "cvbell: invalid parameter: " << e.what() << '\n';
        return kUsage;
    } catch (const cvbell::UndefinedState& e) {
        std::cerr << "cvbell: undefined state: " << e.what() << '\n';
        return kUsage;
    } catch (const cvbell::UnsupportedRegime& e) {
        std::cerr << "cvbell: unsupported regime: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "cvbell: " << e.what() << '\n';
        return kVerifyFailed;
    }
}
