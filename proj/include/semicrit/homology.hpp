#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semicrit/slice.hpp"

namespace semicrit {

// a-module shape of a cohomology group over Q[a]/(a^N): Jordan data of the
// nilpotent shift. Blocks of full size N count as free (no torsion detected
// up to a^N); shorter blocks are torsion a^k summands.
struct AStructure {
    int dim = 0;
    int free_rank = 0;
    std::vector<int> torsion;  // block sizes < N, descending

    friend bool operator==(const AStructure& x, const AStructure& y) {
        return x.dim == y.dim && x.free_rank == y.free_rank && x.torsion == y.torsion;
    }
};

struct CellData {
    int charge = 0;
    int level = 0;  // combined energy
    AStructure h;
    bool stable = false;
};

struct ChargeSummary {
    int charge = 0;
    AStructure h;                    // whole truncated H^n
    std::vector<CellData> cells;     // graded by combined energy level
};

struct HReport {
    ModuleId id;
    SliceParams params;
    std::vector<ChargeSummary> charges;
};

// H^n of the slice for every charge with both adjacent differentials inside
// the slice window, including the energy-level cell breakdown.
HReport cohomology(const ComplexSlice& s);

// cohomology of s compared against a one-step-larger slice; marks each cell
// stable when dimension and a-structure agree between the two truncations
HReport stable_window(const ModuleId& id, const SliceParams& params);

// per-q-degree dims of H^charge via the descending q-filtration ladder;
// returns (doubled q, dim of the graded piece, level breakdown)
struct QCell {
    int qdeg2 = 0;
    int level = 0;
    int dim = 0;
    bool stable = false;
};
std::vector<QCell> qgraded_h(const ComplexSlice& s, int charge);

// graded count of the span of f-monomials times ground vectors (the chi-closed
// charge-zero family): cells (doubled q, level) -> count
std::vector<QCell> f2_count(int lambda, int mu, int energy_bound, int apow_bound);

enum class Divisibility { ClassZero, Indivisible, DivisibleBy };
struct DivisibilityReport {
    Divisibility kind = Divisibility::Indivisible;
    int power = 0;  // for DivisibleBy: largest k with [v] in a^k H
};

// decide whether the class of the cocycle v is divisible by a within the slice
DivisibilityReport class_divisibility(const ComplexSlice& s, const Vector& v, int charge);

// dimension of ker(a^i acting on H^n) computed from ranks alone
int shift_kernel_dim(const ComplexSlice& s, int charge, int power);

}  // namespace semicrit
