#pragma once
#include <functional>
#include <string>
#include <vector>

namespace swt::selftest {

// One end-to-end verification criterion. `measured` is the headline worst-case
// number checked against `tolerance`; secondary measurements folded into `pass`
// are reported in `note`. A criterion that throws is reported as failed with
// the error message in `note`.
struct Criterion {
    int index = 0;  // 1-based position in the fixed suite
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
    std::string note;
};

using Progress = std::function<void(const Criterion&)>;

// Runs the full suite in order. Every tolerance and configuration is pinned
// here, not caller-supplied; the optional callback fires after each criterion
// so front-ends can stream the table.
std::vector<Criterion> run_all(const Progress& progress = {});

}  // namespace swt::selftest
