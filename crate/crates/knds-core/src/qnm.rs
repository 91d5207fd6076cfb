//! QNM orchestration (bring-up stub).
