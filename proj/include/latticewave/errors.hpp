#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace latticewave {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoBracket : Error {
    explicit NoBracket(const std::string& msg) : Error("NoBracket: " + msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error("NoConvergence: " + msg) {}
};

struct QuadratureFail : Error {
    std::complex<double> best_estimate;
    double error_estimate;
    QuadratureFail(const std::string& msg, std::complex<double> best, double err)
        : Error("QuadratureFail: " + msg), best_estimate(best), error_estimate(err) {}
};

struct SumDiverges : Error {
    explicit SumDiverges(const std::string& msg) : Error("SumDiverges: " + msg) {}
};

struct BandNotFound : Error {
    explicit BandNotFound(const std::string& msg) : Error("BandNotFound: " + msg) {}
};

struct EdgeSingular : Error {
    explicit EdgeSingular(const std::string& msg) : Error("EdgeSingular: " + msg) {}
};

struct OnShellSingular : Error {
    explicit OnShellSingular(const std::string& msg) : Error("OnShellSingular: " + msg) {}
};

struct ThresholdSingular : Error {
    explicit ThresholdSingular(const std::string& msg) : Error("ThresholdSingular: " + msg) {}
};

struct DegenerateRoot : Error {
    explicit DegenerateRoot(const std::string& msg) : Error("DegenerateRoot: " + msg) {}
};

struct WorkTraceNoConverge : Error {
    explicit WorkTraceNoConverge(const std::string& msg) : Error("WorkTraceNoConverge: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

} // namespace latticewave
