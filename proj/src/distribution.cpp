#include "homsim/distribution.hpp"

#include <stdexcept>

namespace homsim {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ideal: return "ideal";
    case Provenance::lossy: return "lossy";
    case Provenance::clicks: return "clicks";
    case Provenance::sampled: return "sampled";
    case Provenance::deconvolved: return "deconvolved";
  }
  return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "ideal") return Provenance::ideal;
  if (s == "lossy") return Provenance::lossy;
  if (s == "clicks") return Provenance::clicks;
  if (s == "sampled") return Provenance::sampled;
  if (s == "deconvolved") return Provenance::deconvolved;
  throw std::invalid_argument("unknown provenance: " + s);
}

} // namespace homsim
