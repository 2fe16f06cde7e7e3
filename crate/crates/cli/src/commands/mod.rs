pub mod aggregate;
pub mod detect;
pub mod generate;
pub mod metrics;
pub mod oracle;
