"""Application layer: command-line handlers and the services behind them."""
