#pragma once

namespace catwb {

enum class Verdict { Pass, Fail, Unknown };

inline const char *verdictName(Verdict v) {
  switch (v) {
  case Verdict::Pass:
    return "pass";
  case Verdict::Fail:
    return "fail";
  case Verdict::Unknown:
    return "unknown";
  }
  return "?";
}

/// Fail dominates Unknown, which dominates Pass.
inline Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail)
    return Verdict::Fail;
  if (a == Verdict::Unknown || b == Verdict::Unknown)
    return Verdict::Unknown;
  return Verdict::Pass;
}

} // namespace catwb
