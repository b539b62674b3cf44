/** Wire types for the vizcursor session service protocol. */
export {};
