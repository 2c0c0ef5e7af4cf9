#ifndef RHOCI_ERRORS_HPP
#define RHOCI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rhoci {

// Numerical procedure failed to converge or produced an unusable value.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series summation hit its term cap; carries the partial sum accumulated so far.
class series_divergence : public numeric_error {
public:
    series_divergence(const std::string& what, double partial)
        : numeric_error(what), partial_sum(partial) {}
    double partial_sum;
};

// Input data cannot support the requested statistic (zero variance, singular scatter).
class degenerate_data : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A method's defining equation has no usable solution for this sample
// (negative discriminant, inverted acceptance region, ...). Counted per
// replicate by the simulation harness.
class method_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The method is undefined at this sample size (the n=3 "---" cells).
class method_not_applicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// atanh / r-tilde requested at |r| = 1.
class singular_transform : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rhoci

#endif
