#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilpc/subgroup.hpp"

namespace nilpc {

// Homomorphism given by the images of the source generators. Construction
// checks every defining relation of the source in the target.
class GroupHom {
 public:
  // Throws RelationViolated naming the first relation that fails.
  GroupHom(PcPresentation source, PcPresentation target, std::vector<Element> images);

  const PcPresentation& source() const { return src_; }
  const PcPresentation& target() const { return dst_; }
  const std::vector<Element>& images() const { return images_; }
  const Element& image(std::size_t i) const { return images_.at(i); }

  Element apply(const Element& x) const;

 private:
  PcPresentation src_;
  PcPresentation dst_;
  std::vector<Element> images_;
};

// Description of the first relation of `source` broken by the images, if any.
std::optional<std::string> violated_relation(const PcPresentation& source, const PcPresentation& target,
                                             const std::vector<Element>& images);

GroupHom hom_from_images(const PcPresentation& source, const PcPresentation& target, std::vector<Element> images);
GroupHom identity_hom(const PcPresentation& g);
// second after first
GroupHom compose(const GroupHom& second, const GroupHom& first);

// Both composites fix every generator. Throws DimensionError when the maps
// do not run in opposite directions between the same presentations.
bool is_inverse_pair(const GroupHom& phi, const GroupHom& psi);

struct ImageIndex {
  Subgroup image;
  Period index;  // infinite when the image has infinite index
};
ImageIndex image_index(const GroupHom& phi);

struct InvariantReport {
  std::size_t hirsch = 0;
  std::size_t nilpotency_class = 0;
  IntVector ab_invariants;  // 0 for a free factor
  Int mn_order;
  std::size_t p = 0;
  std::size_t n = 0;
  Int e;
  bool regular = false;
  bool tame = false;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

InvariantReport invariant_report(const PcPresentation& g);

}  // namespace nilpc
