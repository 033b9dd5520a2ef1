#pragma once

#include "resnorm/operator.hpp"

#include <string>
#include <vector>

namespace resnorm::states {

/// Named constant from the state zoo.
struct StateZooEntry {
  std::string name;
  Operator op;        // unit trace, PSD
  std::string notes;  // origin / construction note
};

/// Maximally entangled state Phi_d = (1/d) sum_{ij} |ii><jj| on C^d (x) C^d.
Operator max_entangled(int d);

/// P_d = (1/d) sum_i |ii><ii|.
Operator diagonal_projector_state(int d);

/// omega_d = (P_d - Phi_d)/(d-1), d >= 3.
Operator omega_state(int d);

// Qutrit magic states (pure): strange |S>, Norell |N>, and the Hadamard
// eigenstates |H_+>, |H_->, |H_i> with eigenvalues +1, -1, i.
Vector strange_ket();
Vector norell_ket();
Vector hadamard_plus_ket();
Vector hadamard_minus_ket();
Vector hadamard_i_ket();

/// The qutrit Hadamard (Fourier) gate H_{jk} = omega^{jk} / sqrt 3.
Matrix qutrit_hadamard();

/// Single-qubit magic state |T> = (|0> + e^{i pi/4}|1>)/sqrt 2.
Vector t_ket();
Operator t_state();

/// Three-qubit Hoggar SIC fiducial (-1+2i,1,1,1,1,1,1,1)^T / sqrt 12,
/// optionally displaced by the Pauli string with X part a and Z part b
/// (bit vectors of length 3 packed into integers).
Vector hoggar_ket(int a = 0, int b = 0);
Operator hoggar(int a = 0, int b = 0);

/// Single-qubit Pauli string on n qubits: (X^{a_1} Z^{b_1}) (x) ... with
/// bits taken from the binary expansions of a and b (qubit 0 = MSB).
Matrix pauli_string(int n, int a, int b);

/// Full zoo: Phi2, Phi3, P3, omega3..omega5, S, N, H+, H-, Hi, T, Hoggar.
std::vector<StateZooEntry> state_zoo();

/// Lookup by name (case-sensitive); throws std::invalid_argument if absent.
StateZooEntry zoo_lookup(const std::string& name);

}  // namespace resnorm::states
