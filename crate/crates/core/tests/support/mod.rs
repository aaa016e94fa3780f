#![allow(dead_code)]

pub mod stripping;
