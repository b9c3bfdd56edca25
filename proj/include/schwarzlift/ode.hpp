#pragma once

#include <functional>
#include <vector>

namespace schwarzlift {

using State = std::vector<double>;
using OdeRhs = std::function<void(double t, const State& y, State& dy)>;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double initial_step = 1e-3;
  double max_step = 0.05;
  long max_steps = 2'000'000;
};

/// Called after each accepted step with the step endpoints. Returning false
/// stops the integration.
using StepObserver =
    std::function<bool(double t0, const State& y0, double t1, const State& y1)>;

/// Dormand-Prince 5(4) with adaptive steps, landing exactly on every node of
/// `nodes` (increasing, nodes[0] is the initial time). Returns the state at
/// each node reached; fewer entries if the observer stopped early.
std::vector<State> integrate_adaptive(const OdeRhs& f, const State& y0, const std::vector<double>& nodes,
                                      const OdeOptions& opts = {}, const StepObserver& observer = {});

/// Same scheme with a fixed step h (the last step to each node is shortened).
std::vector<State> integrate_fixed(const OdeRhs& f, const State& y0, const std::vector<double>& nodes, double h);

}  // namespace schwarzlift
