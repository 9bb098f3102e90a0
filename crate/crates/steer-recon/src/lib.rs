//! Steerable (group-equivariant) convolutional networks for cyclic rotation
//! groups, applied to self-supervised denoising and tomographic image
//! reconstruction.
//!
//! The crate is organised around eight subsystems:
//!
//! * [`tensor`] — dense f64 tensors with tape-based reverse-mode autodiff
//! * [`gemm`] — the blocked matrix kernel backing convolution and projection
//! * [`groups`] — representation theory of the cyclic groups `C_N`
//! * [`basis`] — steerable kernel bases solved as a numeric null-space problem
//! * [`nn`] — equivariant layers and the two reference architectures
//! * [`imaging`] — Radon projector pair, phantoms, Poisson noise, image I/O
//! * [`metrics`] — MSE / SSIM / PSNR
//! * [`recon`] — the experiment pipelines (denoise, reconstruct, MLEM, assisted)
//!
//! With the default `parallel` feature the inner loops run on rayon; results
//! are bitwise identical to the sequential fallback because every output
//! element is owned by exactly one task and reduced in a fixed order.

pub mod basis;
pub mod cli;
pub mod config;
pub mod gemm;
pub mod groups;
pub mod imaging;
pub mod metrics;
pub mod nn;
pub mod parallel;
pub mod recon;
pub mod tensor;
