#pragma once

#include "cdel/deligne.hpp"

#include <memory>
#include <vector>

// Ready-made covers and line-bundle cocycles used by the validation tools and
// the self tests: two- and four-chart circle covers, the block cover of the
// torus grid, polar-cap covers of the sphere, the charge-n monopole cocycle,
// and the two gauge presentations of the alpha-twisted circle bundle.
namespace cdel::models {

std::shared_ptr<const deligne::Cover> circle_two_chart_cover(int n, int margin);
std::shared_ptr<const deligne::Cover> circle_four_chart_cover(int n);

// blocks x blocks overlapping square patches; requires n % blocks == 0 and
// patch width n/blocks + 3 < n
std::shared_ptr<const deligne::Cover> torus_grid_cover(const dec::Triangulation& torus,
                                                       int blocks);

// polar caps N = {z > -zcut}, S = {z < zcut}; attaches the clutching cycle
// along the cap-assignment boundary, oriented as the boundary of the north side
std::shared_ptr<const deligne::Cover> sphere_two_chart_cover(int frequency, double zcut);

// the two caps plus an extra band chart {zlo < z < zhi}; refines the two-chart
// cover when the band sits inside the north cap
std::shared_ptr<const deligne::Cover> sphere_band_cover(int frequency, double zcut,
                                                        double zlo, double zhi);

// chart maps (fine chart -> coarse chart) for the refinements above
std::vector<int> circle_refinement_map();
std::vector<int> sphere_refinement_map();

// charge-n monopole on a polar-cap cover of the sphere
deligne::Deligne1 monopole_on(std::shared_ptr<const deligne::Cover> cov, int charge);

// alpha-twisted circle bundle, connection gauge: flat transition, holonomy
// carried by the connection form alpha dx on both charts
deligne::Deligne1 twist_connection_on(std::shared_ptr<const deligne::Cover> cov,
                                      double alpha);

// alpha-twisted circle bundle, clutching gauge: zero connection form, constant
// transition e^{2 pi i alpha} on the overlap component through vertex 0
deligne::Deligne1 twist_clutching_on(std::shared_ptr<const deligne::Cover> cov,
                                     double alpha);

std::vector<int> circle_loop(int n);

} // namespace cdel::models
