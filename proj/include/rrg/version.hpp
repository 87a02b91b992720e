#ifndef RRG_VERSION_HPP
#define RRG_VERSION_HPP

namespace rrg {

inline constexpr const char* kArtifactName = "rrg";
inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1";

} // namespace rrg

#endif
