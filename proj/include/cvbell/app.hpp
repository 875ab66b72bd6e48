// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

// Batch front-end shared by the command-line tool and the Python module.
namespace cvbell::app {

// Bad flags or an inconsistent configuration (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output could not be written (exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    std::vector<double> points() const;
};

// "lo:hi:steps", steps >= 1 points inclusive of both ends.
Grid parse_grid(const std::string& spec);

struct RunConfig {
    std::string state;  // vlb | t | twb | conditional
    std::string test;   // dp2 | dp3 | ps2 | ps3 | homodyne
    std::optional<double> r;
    std::optional<double> n;
    std::optional<double> n2;
    std::optional<double> n3;
    std::optional<double> eta;
    std::optional<double> j;
    double phi2 = 0.0;
    double phi3 = 0.0;
    bool optimize = false;
    std::optional<Grid> grid;
    int cutoff = 30;
    double tol = 1e-8;
};

struct Table {
    std::string title;
    std::vector<std::string> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

const std::vector<std::string>& figure_ids();

Table run_figure(const std::string& id, const RunConfig& config);

// One record: ordered (key, value) pairs, numeric or string.
struct Field {
    std::string key;
    std::optional<double> number;
    std::string text;
};
using Record = std::vector<Field>;

Record run_point(const RunConfig& config);

enum class CheckStatus { Pass, Fail, Finding };

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    int cutoff = 30;
    std::vector<Check> checks;

    bool passed() const;
};

VerifyReport run_verify(const RunConfig& config);

// 12 significant digits, locale independent.
std::string format_number(double v);

void write_table(const Table& table, const std::string& format, std::ostream& out);
void write_record(const Record& record, std::ostream& out);
void write_report(const VerifyReport& report, const std::string& format, std::ostream& out);

}  // namespace cvbell::app
