#ifndef RHOCI_VERSION_HPP
#define RHOCI_VERSION_HPP

namespace rhoci {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
