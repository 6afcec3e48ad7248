#pragma once

#include <optional>
#include <vector>

#include "nilpc/morphism.hpp"
#include "nilpc/series.hpp"

namespace nilpc {

// Pseudo-basis in four segments (0-based ranges):
//   [0, i0)   basis of G/M(G)
//   [i0, i1)  basis of M(G)/N(G), periods e_{i0+1} | ... | e_{i1}
//   [i1, i2)  basis of N(G)/Is(G'), the first n of them being u_i^{e_i} mod Is(G')
//   [i2, m)   pseudo-basis of Is(G')
struct AdaptedPresentation {
  PcPresentation pres;
  std::size_t i0 = 0;
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::vector<Element> generators;  // the new sequence, in the input group
  std::optional<GroupHom> to_adapted;
  std::optional<GroupHom> from_adapted;

  std::size_t n() const { return i1 - i0; }
  std::size_t p() const { return i2 - i1; }
  Int e() const;
  // True when u_i^{e_i} has u_{i+n} coordinate 1 and no other coordinate in
  // [i1, i2), for i0 <= i < i1.
  bool normalized() const;
};

// Builds the adapted basis of any consistent presentation.
AdaptedPresentation adapt_basis(const PcPresentation& g);
// Reads the markers of a presentation assumed to be adapted already; throws
// PresentationError when it is not.
AdaptedPresentation as_adapted(const PcPresentation& g);

struct DeformationParams {
  IntVector d;  // length n
  IntMatrix c;  // n x n
};

// Throws Error unless gcd(prod d, e) = 1, |det c| = 1 and a is normalized.
void validate(const AdaptedPresentation& a, const DeformationParams& params);

PcPresentation abdef(const AdaptedPresentation& a, const DeformationParams& params);

// Element of the direct sum of (Z/e_i)^p over the special block.
struct ExtClass {
  std::vector<IntVector> components;  // one vector of length p per i in [i0, i1)
  IntVector moduli;

  friend bool operator==(const ExtClass&, const ExtClass&) = default;
  friend auto operator<=>(const ExtClass& x, const ExtClass& y) { return x.components <=> y.components; }
};

ExtClass ext_class(const AdaptedPresentation& a, const DeformationParams& params);
// Class realized by the adapted presentation itself.
ExtClass ext_class_of(const AdaptedPresentation& a);

struct Deformation {
  DeformationParams params;
  ExtClass cls;
  PcPresentation pres;
};

struct DeformationEnumeration {
  std::vector<Deformation> classes;  // one representative per Ext class, sorted
  Int bound;                         // e^p
  std::size_t candidates = 0;
};

DeformationEnumeration enumerate_deformations(const AdaptedPresentation& a);

// Monomorphism from the adapted group to abdef(a, params).
GroupHom standard_embedding(const AdaptedPresentation& a, const DeformationParams& params);
// Twisted by q_k = product of the first j primes not dividing d_k.
GroupHom twisted_embedding(const AdaptedPresentation& a, const DeformationParams& params, std::size_t j);

}  // namespace nilpc
