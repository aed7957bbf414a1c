#ifndef LEEYANG_VERSION_HPP
#define LEEYANG_VERSION_HPP

namespace leeyang {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leeyang

#endif
