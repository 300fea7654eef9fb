#![allow(dead_code)]

pub mod corpus;
pub mod oracle;
pub mod props;
