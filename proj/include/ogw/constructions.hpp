#pragma once

// Forward and backward functionals of the reductions between ordered-group
// problems and their classical counterparts.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ogw/groups.hpp"
#include "ogw/harness.hpp"
#include "ogw/kernel.hpp"
#include "ogw/orders.hpp"
#include "ogw/problems.hpp"

namespace ogw {

// Membership of a node decided from the facts read so far; nullopt while
// the facts leave it open.
using MembershipRule = std::function<std::optional<bool>(const FactReplay&, std::span<const Digit>)>;

// Fact digits -> characteristic name of the tree (digit n decides node_decode(n)),
// emitted while decided.
MonotoneFunctional membership_functional(std::string label, MembershipRule rule);
// The tree of nodes decided as members by a fact prefix.
TreeDesc decided_tree(std::span<const Digit> facts, MembershipRule rule, std::string label);
// "member <node>" / "nonmember <node>" lines for the decided prefix of a
// characteristic name.
std::string format_membership(std::span<const Digit> characteristic);

// sigma is a member iff q_i -> g_sigma(i) preserves the order, q_i the i-th rational.
std::optional<bool> q_tree_member(const FactReplay& facts, std::span<const Digit> node);
MonotoneFunctional embed_q_tree();
// The same tree decided from the ground-truth elements, certified by epsilon.
TreeDesc certified_q_tree(const EnumeratedOrderedGroup& g);
int epsilon_decode(int wf_bit);

// Tree name -> fact digits of the free abelian group on KB(T).
MonotoneFunctional free_abelian_forward();

Reduction og_epsilon_to_wf();  // OG->epsilon reduces to WF
Reduction wf_to_og_epsilon();  // WF reduces to OG->epsilon

// Images under an order embedding into Z^alpha Q^epsilon of the identity
// and of the root generators a_i of a forest group.
struct ForestMap {
  std::optional<ZAQElement> identity;
  std::vector<std::optional<ZAQElement>> roots;
};

// Embedding read off the certificates: roots before the first ill-founded
// block share the Q-coordinate of e, later roots get increasing ones.
ForestMap forest_embedding(const Forest& forest);
// 0 iff f(a_{i-1}) and f(a_i) share their Q-coordinate (f(e), f(a_0) for
// i = 0); nullopt until both images are named.
std::optional<int> read_epsilon_from_f(const ForestMap& f, std::size_t i);
std::vector<int> decode_forest_bits(const ForestMap& f);

struct Reinterpretation {
  std::size_t coordinate = 0;  // merged into coordinate - 1
  Coefficient l = 0;
};

struct StagePlan {
  std::size_t stage = 0;
  std::vector<Reinterpretation> reinterpretations;
  Coefficient elements_emitted = 0;  // box bound saturated
  std::size_t dim = 0;
  std::size_t elements = 0;
};

struct StageRun {
  std::vector<GroupFact> facts;
  std::vector<StagePlan> plans;
  std::vector<Vec> vectors;  // final coordinates of the declared elements
};

// Stage 0 reads k and declares e in Z^{k+1}; stage s >= 1 reads tuple name
// position s and collapses the top coordinate at the first zero of a stream,
// then declares the box |a_j| <= s.
StageRun lpo_star_forward(std::size_t k, const std::vector<Digits>& stream_prefixes,
                          std::size_t stage);
StageRun lpo_star_forward_name(std::span<const Digit> tuple_name, std::size_t stage = kUnbounded);
// (k, bits) once the copy reveals k+1-n elements with n streams showing a zero.
std::optional<Digits> lpo_star_backward(std::size_t k, const std::vector<Digits>& stream_prefixes,
                                        std::span<const Digit> alpha_prefix);
MonotoneFunctional lpo_star_forward_functional();
MonotoneFunctional lpo_star_backward_functional();
Reduction lpo_star_to_og_alpha();

// One generator, then stage s reads p(s): a column opening with a digit
// other than 1 adds a top generator, the first later 1 in an opened column
// collapses its generator; then the box |a_j| <= s is declared.
StageRun chi_forward(std::span<const Digit> p_prefix, std::size_t stage = kUnbounded);
Digits chi_backward(std::span<const Digit> c_prefix);
MonotoneFunctional chi_forward_functional();
MonotoneFunctional chi_backward_functional();
Reduction chi_to_og_alpha0();

// Elements of Z^alpha Q^epsilon for finite alpha, labelled by naturals:
// the z-part in L1-then-lexicographic order, paired with the rational index
// when epsilon = 1.
class TargetOrder {
 public:
  TargetOrder(std::size_t alpha, bool epsilon);
  std::size_t alpha() const { return dim_; }
  bool epsilon() const { return epsilon_; }
  // nullopt for labels naming no element.
  std::optional<ZAQElement> element(Digit label) const;
  Digit label_of(const Vec& z, std::size_t q_index = 0) const;

 private:
  Vec z_at(std::size_t index) const;
  std::size_t dim_;
  bool epsilon_;
  std::shared_ptr<const FiniteLinearOrder> order_;
};

// Back-and-forth tree: position 2n maps g_n to a target label, position
// 2n+1 names the preimage of target label n; members are partial order
// isomorphisms.
std::optional<bool> embedding_member(const FactReplay& facts, const TargetOrder& target,
                                     std::span<const Digit> node);
MonotoneFunctional embedding_tree(const OrdinalCopy& alpha, bool epsilon);

struct FirstOrderRun {
  Digits digits;        // least copy ordinals of convergent simulations
  bool exhausted = false;
  std::size_t examined = 0;
};

// Simulates psi0 on <f|l, tau_i> for triples n = <l, i> < budget, tau_i the
// i-th finite string.
FirstOrderRun first_order_forward(const CertifiedStream& f, const MonotoneFunctional& phi0,
                                  const MonotoneFunctional& psi0, std::size_t budget);
// Value of psi0 at the first convergent simulation whose least copy ordinal is m.
Digit first_order_backward(const CertifiedStream& f, const MonotoneFunctional& psi0, Digit m,
                           std::size_t budget);

struct FirstOrderPipeline {
  FirstOrderRun forward;
  Digit m = 0;
  Digit value = 0;
  Digit direct = 0;  // psi0 on f with the certified copy of alpha
};

// Min is applied to the emitted digits; `alpha` is the certified order type
// of phi0's group.
FirstOrderPipeline first_order_pipeline(const CertifiedStream& f, const MonotoneFunctional& phi0,
                                        const MonotoneFunctional& psi0, const OrdinalCopy& alpha,
                                        std::size_t budget);

}  // namespace ogw
