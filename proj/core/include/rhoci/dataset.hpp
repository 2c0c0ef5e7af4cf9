#ifndef RHOCI_DATASET_HPP
#define RHOCI_DATASET_HPP

#include <vector>

namespace rhoci {

struct Obs {
    double x1;
    double x2;
};

// Ordered paired observations; all statistics require n >= 2.
using DataSet = std::vector<Obs>;

}  // namespace rhoci

#endif
