#ifndef EULERDATA_VERSION_HPP
#define EULERDATA_VERSION_HPP

namespace eulerdata {
inline constexpr const char* kEngineVersion = "1.0.0";
}

#endif
