#include "nilpc/morphism.hpp"

#include "nilpc/deformation.hpp"

namespace nilpc {

namespace {

Element evaluate_in(const PcPresentation& target, const std::vector<Element>& images, const Element& x) {
  Element out = target.identity();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = target.multiply(out, target.power(images[i], x[i]));
  return out;
}

std::string generator_name(std::size_t i) { return "u" + std::to_string(i + 1); }

}  // namespace

std::optional<std::string> violated_relation(const PcPresentation& source, const PcPresentation& target,
                                             const std::vector<Element>& images) {
  if (images.size() != source.rank())
    throw DimensionError("expected " + std::to_string(source.rank()) + " images, got " + std::to_string(images.size()));
  for (const Element& y : images)
    if (!target.is_normal_form(y)) throw DimensionError("image " + to_string(y) + " is not a normal form of the target");
  for (std::size_t i = 0; i < source.rank(); ++i) {
    if (source.period(i).is_finite()) {
      const Element lhs = target.power(images[i], source.period(i).value());
      const Element rhs = evaluate_in(target, images, source.power_tail(i));
      if (!(lhs == rhs))
        return generator_name(i) + "^" + source.period(i).to_string() + " = " + to_string(source.power_tail(i));
    }
    for (std::size_t j = i + 1; j < source.rank(); ++j) {
      const Element lhs = target.commutator(images[j], images[i]);
      const Element rhs = evaluate_in(target, images, source.commutator_tail(j, i));
      if (!(lhs == rhs))
        return "[" + generator_name(j) + "," + generator_name(i) + "] = " + to_string(source.commutator_tail(j, i));
    }
  }
  return std::nullopt;
}

GroupHom::GroupHom(PcPresentation source, PcPresentation target, std::vector<Element> images)
    : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {
  if (const auto bad = violated_relation(src_, dst_, images_)) throw RelationViolated("relation violated: " + *bad);
}

Element GroupHom::apply(const Element& x) const {
  if (x.size() != src_.rank()) throw DimensionError("element does not belong to the source");
  return evaluate_in(dst_, images_, x);
}

GroupHom hom_from_images(const PcPresentation& source, const PcPresentation& target, std::vector<Element> images) {
  return GroupHom(source, target, std::move(images));
}

GroupHom identity_hom(const PcPresentation& g) {
  std::vector<Element> images;
  for (std::size_t i = 0; i < g.rank(); ++i) images.push_back(g.generator(i));
  return GroupHom(g, g, std::move(images));
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (!(first.target() == second.source())) throw DimensionError("maps cannot be composed");
  std::vector<Element> images;
  for (const Element& y : first.images()) images.push_back(second.apply(y));
  return GroupHom(first.source(), second.target(), std::move(images));
}

bool is_inverse_pair(const GroupHom& phi, const GroupHom& psi) {
  if (!(phi.target() == psi.source()) || !(psi.target() == phi.source()))
    throw DimensionError("maps do not run in opposite directions between the same groups");
  for (std::size_t i = 0; i < phi.source().rank(); ++i)
    if (!(psi.apply(phi.image(i)) == phi.source().generator(i))) return false;
  for (std::size_t i = 0; i < psi.source().rank(); ++i)
    if (!(phi.apply(psi.image(i)) == psi.source().generator(i))) return false;
  return true;
}

ImageIndex image_index(const GroupHom& phi) {
  Subgroup image = induce(phi.target(), phi.images());
  const Period index = image.index();
  return {std::move(image), index};
}

InvariantReport invariant_report(const PcPresentation& g) {
  InvariantReport r;
  for (const Period& p : g.periods())
    if (p.is_infinite()) ++r.hirsch;
  r.nilpotency_class = nilpotency_class(g);
  r.ab_invariants = abelianization(g).invariants();
  const KeySubgroups key = key_subgroups(g);
  r.mn_order = key.mn_order;
  r.regular = key.regular();
  r.tame = key.tame();
  const AdaptedPresentation a = adapt_basis(g);
  r.p = a.p();
  r.n = a.n();
  r.e = a.e();
  return r;
}

}  // namespace nilpc
