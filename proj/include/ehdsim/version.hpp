#ifndef EHDSIM_VERSION_HPP
#define EHDSIM_VERSION_HPP

namespace ehd {

inline constexpr const char* version_string = "0.1.0";

} // namespace ehd

#endif // EHDSIM_VERSION_HPP
