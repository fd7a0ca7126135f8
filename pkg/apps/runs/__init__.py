# Runs app
