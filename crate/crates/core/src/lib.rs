//! Exact tooling for Hamiltonicity questions on connected regular graphs:
//! bitset graphs up to 64 vertices, graph6 interchange, canonical forms,
//! cut structure, Hamilton cycle and path deciders with verifiable
//! certificates, extremal constructions at the connectivity barrier, and
//! exhaustive isomorph-free enumeration with a verification harness on top.

pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod structure;

pub use canon::{are_isomorphic, automorphism_count, canonical_form, CanonicalForm};
pub use construct::{
    circulant, f_prime_rt, f_rt, family_f, family_h, generalized_no_hamilton, h_prime_rt, h_rt,
    is_family_f_member, is_family_h_member, no_path_f, no_path_h, petersen, petersen_prime,
    ConstructError, HPrimeVariant,
};
pub use enumerate::{
    count_connected_k_regular, enumerate_connected_k_regular, for_each_connected_k_regular,
    ingest_graph6, naive_connected_k_regular, par_for_each_connected_k_regular, EnumerateError,
    EnumerationTask, GraphFilter, Ingested,
};
pub use graph::{DegreeProfile, Graph, GraphError, MAX_VERTICES};
pub use graph6::{decode, encode, Graph6Error};
pub use hamilton::{
    cycle_through, hamiltonian_cycle, hamiltonian_path, hamiltonian_path_from,
    verify_certificate, Certificate, CertificateError, CertificateKind, Engine, HamiltonError,
    SearchOptions,
};
pub use structure::{
    block_decomposition, components, components_after_deletion, cut_vertices, is_connected,
    is_two_connected,
};
