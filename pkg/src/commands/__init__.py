# One module per subcommand; each is registered on the main group in src/main.py
