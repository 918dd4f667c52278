#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "cechdr/locmod.hpp"

namespace cechdr {

struct WindowSchedule {
    int k0 = 3;
    int D0 = 8;
    int dk = 1;
    int dD = 3;
    int probe_depth = 2;  // extra window growth feeding the image computation
    int span = 3;         // consecutive agreeing outer windows for stabilization
    int max_windows = 12;
};

struct WindowTraceEntry {
    TruncationWindow window;
    std::vector<int> apparent;          // per homology degree 0..nops
    std::vector<int> cycles;            // exact cycle-space dims per degree
    std::vector<bool> probe_exhausted;  // per degree
    bool clean() const {
        for (bool b : probe_exhausted)
            if (b) return false;
        return true;
    }
};

struct WorkCounters {
    long long outer_windows = 0;
    long long echelon_work = 0;
    long long columns = 0;
    int max_quotient_dim = 0;
};

struct DeRhamResult {
    std::vector<int> ops;   // operator variable indices
    std::vector<int> dims;  // reported only when stabilized
    long long chi = 0;
    long long chi_c = 0;
    bool stabilized = false;
    std::string note;
    std::vector<WindowTraceEntry> trace;
    WindowSchedule schedule;
    WorkCounters counters;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Raised at a checkpoint between eliminations when the soft deadline passed.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("time budget exhausted") {}
};

long long chi_of_dims(const std::vector<int>& dims);
long long chi_c_of_dims(const std::vector<int>& dims);

// Apparent homology dimensions over one outer window.  Kernels are exact
// (differentials computed into the enlarged next window); boundary parts are
// grown probe_depth extra steps and flagged when still moving at the cap.
WindowTraceEntry homology_dims(const LocalizedModuleSpec& spec, const std::vector<int>& ops,
                               TruncationWindow outer, int probe_depth,
                               WorkCounters* counters, Deadline deadline = std::nullopt);

// Runs homology_dims over the growing window sequence and declares
// stabilization when all degrees agree across schedule.span consecutive
// clean windows.  Never fabricates dims: budget exhaustion leaves
// stabilized = false with the full trace.
DeRhamResult derham_homology(const LocalizedModuleSpec& spec, const WindowSchedule& schedule,
                             std::vector<int> ops = {}, Deadline deadline = std::nullopt);

}  // namespace cechdr
