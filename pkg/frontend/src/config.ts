/** Client configuration: the server base URL and an optional auth token. */
export interface AppConfig {
  baseUrl: string;
  token?: string;
}

declare global {
  interface Window {
    TERMFORGE_CONFIG?: Partial<AppConfig>;
  }
}

export function resolveConfig(): AppConfig {
  const provided = typeof window !== "undefined" ? window.TERMFORGE_CONFIG ?? {} : {};
  return {
    baseUrl: provided.baseUrl ?? "http://127.0.0.1:8765",
    token: provided.token,
  };
}
