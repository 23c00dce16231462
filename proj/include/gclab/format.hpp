#ifndef GCLAB_FORMAT_HPP
#define GCLAB_FORMAT_HPP

#include <cstdio>
#include <string>

namespace gclab {

/// Shortest round-trippable decimal form of a double ("%.17g", C locale).
/// Every number the lab writes goes through here so that reruns with the
/// same seed produce byte-identical files.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace gclab

#endif
