#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mvrank {

// Right-continuous step function on [breakpoints.front(), breakpoints.back()).
// breakpoints has K+1 strictly increasing entries in [0, 1] starting at 0;
// values has K entries, values[k] being the value on
// [breakpoints[k], breakpoints[k+1]). All values finite and >= 0.
class StepCurve {
  public:
    StepCurve() = default;
    StepCurve(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }
    double domain_end() const { return breaks_.back(); }

    // Value at alpha. Throws std::domain_error outside [0, breakpoints.back()).
    double value_at(double alpha) const;

    bool is_nondecreasing() const;

    // CSV with header "alpha,value", one row per breakpoint carrying the
    // value to the right of it; the final breakpoint repeats the last value.
    std::string to_csv() const;

    std::string to_json() const;
    static StepCurve from_json(const std::string& text);

  private:
    std::vector<double> breaks_;
    std::vector<double> values_;
};

// Exact sup distance between two step curves over [a, b), computed on the
// merged breakpoint set. Requires 0 <= a <= b <= min domain end of the two
// curves; throws std::domain_error otherwise.
double sup_distance(const StepCurve& f, const StepCurve& g, double a, double b);

// Exact L1 distance over [a, b), same domain requirements.
double l1_distance(const StepCurve& f, const StepCurve& g, double a, double b);

} // namespace mvrank
