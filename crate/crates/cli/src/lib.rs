pub mod oracle;
pub mod report;
