package hudson.model;

public interface TaskListener {
    void log(String line);
}
