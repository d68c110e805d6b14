#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isoball/domains.hpp"
#include "isoball/series.hpp"
#include "isoball/solver.hpp"

namespace isoball {

enum class CayleyDirection { DiskToHalfplane, HalfplaneToDisk };

// tau = i (1 + z) / (1 - z)  and  z = (tau - i) / (tau + i); maps 0 <-> i.
cplx cayley(CayleyDirection dir, cplx z);

// F_p(w): the p-th root embedding of the disk into the p-disk, with the
// branch of tau^{1/p} taken as r^{1/p} e^{i theta / p}, theta in (0, pi).
std::vector<cplx> eval_pth_root(int p, cplx w);

// (w, ..., w) with p copies.
std::vector<cplx> eval_diagonal(int p, cplx w);

enum class MapKind { PthRoot, Diagonal, Slice, UnitarySolved, Sharp, DirectSum, Catalog, Reparam };

using FactorAutomorphism = std::variant<DiskAutomorphism, BallAutomorphism>;

// Immutable holomorphic-isometry value: a construction tree over the
// canonical embeddings, solved germs, slot substitution, juxtaposition, and
// reparametrization, together with its target space and source constant.
class IsometryMap {
public:
    MapKind kind() const { return kind_; }
    const ProductSpace& target() const { return target_; }
    double source_constant() const { return k_; }

    std::vector<cplx> eval(cplx w) const;

    int p() const { return p_; }
    const std::vector<bool>& slice_mask() const { return mask_; }
    const SolvedIsometry& solved() const { return *solved_; }
    const IsometryMap& base() const { return *a_; }    // Sharp / DirectSum left
    const IsometryMap& insert() const { return *b_; }  // Sharp / DirectSum right
    int slot() const { return slot_; }
    const IsometryMap& wrapped() const { return *a_; }  // Catalog / Reparam
    const std::string& form() const { return form_; }
    const std::vector<double>& params() const { return params_; }
    const DiskAutomorphism& pre() const { return pre_; }
    const std::vector<FactorAutomorphism>& post() const { return post_; }

private:
    IsometryMap() = default;
    friend IsometryMap pth_root_map(int);
    friend IsometryMap diagonal_map(int);
    friend IsometryMap slice_map(const std::vector<bool>&, const std::vector<double>&);
    friend IsometryMap from_solved(SolvedIsometry);
    friend IsometryMap sharp_compose(const IsometryMap&, const IsometryMap&, int);
    friend IsometryMap direct_sum(const IsometryMap&, const IsometryMap&);
    friend IsometryMap reparametrize(const IsometryMap&, const DiskAutomorphism&,
                                     std::vector<FactorAutomorphism>);
    friend IsometryMap catalog_construct(const std::string&, const std::vector<double>&);

    MapKind kind_ = MapKind::Diagonal;
    int p_ = 0;
    std::vector<bool> mask_;
    std::shared_ptr<const SolvedIsometry> solved_;
    std::shared_ptr<const IsometryMap> a_, b_;
    int slot_ = 0;
    std::string form_;
    std::vector<double> params_;
    DiskAutomorphism pre_;
    std::vector<FactorAutomorphism> post_;
    ProductSpace target_;
    double k_ = 1.0;
};

IsometryMap pth_root_map(int p);
// p = 1 gives the identity map of the disk.
IsometryMap diagonal_map(int p);
// Component i evaluates to w where mask[i] is set and to 0 elsewhere.
IsometryMap slice_map(const std::vector<bool>& mask, const std::vector<double>& constants);
IsometryMap from_solved(SolvedIsometry s);

// H(w) = F(w) with the chosen disk-factor component z replaced by G(z); the
// target gains dim(G) - 1 coordinates.  slot is 1-based.
IsometryMap sharp_compose(const IsometryMap& f, const IsometryMap& g, int slot);

// (F(w), G(w)) with source constants added.
IsometryMap direct_sum(const IsometryMap& f, const IsometryMap& g);

IsometryMap reparametrize(const IsometryMap& f, const DiskAutomorphism& pre,
                          std::vector<FactorAutomorphism> post);

// Normal forms: the bidisk family with conformal constants ("bidisk-1" ..
// "bidisk-4") and the polydisk classification forms for p <= 4.
IsometryMap catalog_construct(const std::string& form, const std::vector<double>& params);
std::vector<std::string> catalog_forms();

// Post-composes factor automorphisms so the map fixes the origin and each
// disk component has positive-real first nonvanishing derivative.
IsometryMap normalize_map(const IsometryMap& f);

// Taylor germ of every component at the given center (inside the disk).
std::vector<Series> map_germ(const IsometryMap& f, cplx center, int order = kDefaultOrder);

// (a s + b) / (c s + d) on series.
Series mobius_of_series(cplx a, cplx b, cplx c, cplx d, const Series& s);

// Assembly helpers shared by germ construction and analytic continuation.
std::vector<Series> sharp_splice_germ(const IsometryMap& sharp_map,
                                      const std::vector<Series>& base_germ,
                                      const std::vector<Series>& insert_germ);
std::vector<Series> reparam_wrap_germ(const IsometryMap& reparam_map,
                                      const std::vector<Series>& inner_germ, cplx center,
                                      int order);

// Full germ at `center` of the branch pinned by the supplied component
// values (missing entries are recovered from the map structure); the center
// may lie anywhere the branch is regular, including outside the closed disk.
std::vector<Series> branch_germ(const IsometryMap& f, cplx center,
                                const std::vector<std::optional<cplx>>& values, int order);

// Finite branch points of the analytic continuation of the map.
std::vector<cplx> branch_points(const IsometryMap& f);

// Finite points over which some sheet of some component has a pole; germ
// continuation paths must keep clear of these as well.
std::vector<cplx> pole_points(const IsometryMap& f);

// Points w (possibly on or outside the unit circle) with component(w) = b
// along any sheet; used to push branch loci through compositions.
std::vector<cplx> component_preimages(const IsometryMap& f, int component, cplx b);

}  // namespace isoball
